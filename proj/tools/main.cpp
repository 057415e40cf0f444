#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "shrinkrisk/commands.hpp"

namespace {

struct CliOverrides {
    std::string config_path;
    std::string c, asym_c, out;
    std::uint64_t seed = 0;
    int n = 0, p = 0, threads = 0, snr_points = 0, phase_points = 0, rmt_n = 0, rmt_p = 0;
    long reps = 0;
    double snr_min = 0, snr_max = 0, snr = 0;
    double phase_c_min = 0, phase_c_max = 0, phase_t_min = 0, phase_t_max = 0;
    bool verify = false, inject_fault = false, snr_linear = false;
};

// Adds the shared option set to a subcommand; every flag mirrors a config key.
void add_common(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("--config", ov.config_path, "JSON config file (flat key/value)");
    cmd->add_option("--seed", ov.seed, "base RNG seed");
    cmd->add_option("--out", ov.out, "output path");
    cmd->add_option("--threads", ov.threads, "worker threads for grid cells");
    cmd->add_option("--n", ov.n, "sample size");
    cmd->add_option("--p", ov.p, "number of regressors");
    cmd->add_option("--c", ov.c, "shrinkage tuning ('js' or a number)");
    cmd->add_option("--reps", ov.reps, "Monte Carlo replications");
}

// count() on an option the subcommand does not define would throw, so look
// the name up without throwing first.
bool given(const CLI::App* cmd, const std::string& name) {
    const CLI::Option* opt = cmd->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

shrinkrisk::ExperimentConfig build_config(const CLI::App* cmd, const CliOverrides& ov) {
    shrinkrisk::ExperimentConfig cfg;
    if (given(cmd, "--config")) cfg = shrinkrisk::load_config(ov.config_path);
    if (given(cmd, "--seed")) cfg.seed = ov.seed;
    if (given(cmd, "--out")) cfg.out = ov.out;
    if (given(cmd, "--threads")) cfg.threads = ov.threads;
    if (given(cmd, "--n")) cfg.n = ov.n;
    if (given(cmd, "--p")) cfg.p = ov.p;
    if (given(cmd, "--c")) cfg.c = ov.c;
    if (given(cmd, "--reps")) cfg.reps = ov.reps;
    if (given(cmd, "--asym-c")) cfg.asym_c = ov.asym_c;
    if (given(cmd, "--snr")) cfg.snr = ov.snr;
    if (given(cmd, "--snr-min")) cfg.snr_min = ov.snr_min;
    if (given(cmd, "--snr-max")) cfg.snr_max = ov.snr_max;
    if (given(cmd, "--snr-points")) cfg.snr_points = ov.snr_points;
    if (given(cmd, "--snr-linear")) cfg.snr_log = !ov.snr_linear;
    if (given(cmd, "--phase-c-min")) cfg.phase_c_min = ov.phase_c_min;
    if (given(cmd, "--phase-c-max")) cfg.phase_c_max = ov.phase_c_max;
    if (given(cmd, "--phase-t-min")) cfg.phase_t_min = ov.phase_t_min;
    if (given(cmd, "--phase-t-max")) cfg.phase_t_max = ov.phase_t_max;
    if (given(cmd, "--phase-points")) cfg.phase_points = ov.phase_points;
    if (given(cmd, "--rmt-n")) cfg.rmt_n = ov.rmt_n;
    if (given(cmd, "--rmt-p")) cfg.rmt_p = ov.rmt_p;
    if (given(cmd, "--verify")) cfg.verify = ov.verify;
    if (given(cmd, "--inject-fault")) cfg.inject_fault = ov.inject_fault;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and asymptotic out-of-sample risks of James-Stein-type "
                 "shrinkage in Gaussian linear regression"};
    app.require_subcommand(1);

    CliOverrides ov;

    CLI::App* fig = app.add_subcommand("figure1", "risk-ratio curves along eigenvectors (CSV)");
    add_common(fig, ov);
    fig->add_option("--asym-c", ov.asym_c, "tuning for the asymptotic curve ('js' or '1')");
    fig->add_option("--snr-min", ov.snr_min, "smallest beta'Sigma beta");
    fig->add_option("--snr-max", ov.snr_max, "largest beta'Sigma beta");
    fig->add_option("--snr-points", ov.snr_points, "grid size");
    fig->add_flag("--snr-linear", ov.snr_linear, "linear instead of log spacing");

    CLI::App* phase = app.add_subcommand("phase", "worst-case phase diagram (CSV)");
    add_common(phase, ov);
    phase->add_option("--phase-c-min", ov.phase_c_min, "smallest c");
    phase->add_option("--phase-c-max", ov.phase_c_max, "largest c");
    phase->add_option("--phase-t-min", ov.phase_t_min, "smallest t");
    phase->add_option("--phase-t-max", ov.phase_t_max, "largest t (< 1)");
    phase->add_option("--phase-points", ov.phase_points, "grid points per axis");

    CLI::App* risk = app.add_subcommand("risk", "single-instance exact risk report (JSON)");
    add_common(risk, ov);
    risk->add_option("--snr", ov.snr, "beta'Sigma beta of the instance");
    risk->add_flag("--verify", ov.verify, "cross-check against the Monte Carlo oracle");

    CLI::App* rmt = app.add_subcommand("rmt-check", "integral identity and spectrum diagnostics (JSON)");
    add_common(rmt, ov);
    rmt->add_option("--rmt-n", ov.rmt_n, "rows of the V factor");
    rmt->add_option("--rmt-p", ov.rmt_p, "columns of the V factor");

    CLI::App* verify = app.add_subcommand("verify", "full oracle-equivalence suite");
    add_common(verify, ov);
    verify->add_flag("--inject-fault", ov.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : shrinkrisk::kExitConfigError;
    }

    try {
        if (fig->parsed()) return shrinkrisk::cmd_figure1(build_config(fig, ov));
        if (phase->parsed()) return shrinkrisk::cmd_phase(build_config(phase, ov));
        if (risk->parsed()) return shrinkrisk::cmd_risk(build_config(risk, ov));
        if (rmt->parsed()) return shrinkrisk::cmd_rmt_check(build_config(rmt, ov));
        if (verify->parsed()) return shrinkrisk::cmd_verify(build_config(verify, ov));
    } catch (const shrinkrisk::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return shrinkrisk::kExitConfigError;
    }
    return shrinkrisk::kExitConfigError;
}
