#include "shrinkrisk/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "shrinkrisk/asymptotics.hpp"
#include "shrinkrisk/chisq_moments.hpp"
#include "shrinkrisk/linmodel.hpp"
#include "shrinkrisk/oracle.hpp"
#include "shrinkrisk/risk_exact.hpp"
#include "shrinkrisk/rmt.hpp"
#include "shrinkrisk/rng.hpp"

namespace shrinkrisk {

namespace {

using nlohmann::json;

// 17 significant digits round-trips doubles exactly.
std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Runs fn(i) for i in [0, total) across the requested thread count. Each
// index owns its output slot, so the schedule cannot affect results.
void parallel_for(int total, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, total));
    if (threads == 1) {
        for (int i = 0; i < total; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([=, &fn] {
            for (int i = w; i < total; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::vector<double> snr_grid(const ExperimentConfig& cfg) {
    std::vector<double> grid(cfg.snr_points);
    if (cfg.snr_points == 1) {
        grid[0] = cfg.snr_min;
        return grid;
    }
    for (int i = 0; i < cfg.snr_points; ++i) {
        const double f = static_cast<double>(i) / (cfg.snr_points - 1);
        grid[i] = cfg.snr_log
                      ? cfg.snr_min * std::pow(cfg.snr_max / cfg.snr_min, f)
                      : cfg.snr_min + f * (cfg.snr_max - cfg.snr_min);
    }
    return grid;
}

std::vector<int> default_eigen_indices(int p) {
    std::vector<int> out;
    for (int k : {1, 40, 80, 120, 160}) {
        int idx = std::max(1, static_cast<int>(std::lround(k * p / 160.0)));
        idx = std::min(idx, p);
        if (out.empty() || out.back() != idx) out.push_back(idx);
    }
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);  // LF endings on every platform
    if (!f) throw ConfigError("cannot open output path " + path);
    return f;
}

void emit_report(const ExperimentConfig& cfg, const json& report) {
    const std::string text = report.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        open_out(cfg.out) << text;
    }
}

VectorXd random_unit_direction(int p, std::uint64_t seed) {
    auto rng = make_rng(seed, 7);
    std::normal_distribution<double> normal;
    VectorXd v(p);
    for (int i = 0; i < p; ++i) v(i) = normal(rng);
    return v / v.norm();
}

int run_guarded(const ExperimentConfig& cfg, const std::function<int()>& body) {
    try {
        cfg.validate();
        return body();
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const DegenerateDesign& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace

int cmd_figure1(const ExperimentConfig& cfg) {
    return run_guarded(cfg, [&] {
        if (cfg.out.empty()) throw ConfigError("figure1 requires an output path");
        const double c_fin = resolve_c(cfg.c, cfg.p);
        const double c_asym = resolve_c(cfg.asym_c, cfg.p);
        const double t = static_cast<double>(cfg.p) / cfg.n;
        const double ml_limit = t / (1.0 - t);

        const MatrixXd sigma = MatrixXd::Identity(cfg.p, cfg.p);
        const DesignMatrix design =
            sample_design(cfg.n, cfg.p, sigma, EntryLaw::standard_normal, cfg.seed);
        const double rho2_ml = trace_sigma_gram_inv(design, sigma);

        const std::vector<int> indices = default_eigen_indices(cfg.p);
        const std::vector<double> grid = snr_grid(cfg);
        const int cells = static_cast<int>(indices.size() * grid.size());
        std::vector<std::string> rows(cells);

        parallel_for(cells, cfg.threads, [&](int cell) {
            const int ci = cell / static_cast<int>(grid.size());
            const int gi = cell % static_cast<int>(grid.size());
            const int idx = indices[ci];
            const double s = grid[gi];
            const VectorXd beta = beta_along_eigvec(design, sigma, idx, s);
            const double rho2_js = shrink_risk_out(c_fin, design, sigma, beta);
            const double ratio_asym = r_limit(s, c_asym, t) / ml_limit;
            std::ostringstream row;
            row << "w" << idx << ',' << idx << ',' << g17(design.spectrum(idx - 1)) << ','
                << g17(s) << ',' << g17(rho2_js) << ',' << g17(rho2_ml) << ','
                << g17(rho2_js / rho2_ml) << ',' << g17(ratio_asym);
            rows[cell] = row.str();
        });

        auto out = open_out(cfg.out);
        out << "curve_id,eigen_index,eigenvalue,snr,rho2_js,rho2_ml,ratio_finite,"
               "ratio_asymptotic\n";
        for (const auto& r : rows) out << r << "\n";
        if (!out) throw ConfigError("write failure on " + cfg.out);
        return kExitOk;
    });
}

int cmd_phase(const ExperimentConfig& cfg) {
    return run_guarded(cfg, [&] {
        if (cfg.out.empty()) throw ConfigError("phase requires an output path");
        const int k = cfg.phase_points;
        std::vector<std::string> rows(k * k);
        parallel_for(k * k, cfg.threads, [&](int cell) {
            const int i = cell / k;
            const int j = cell % k;
            const double c = cfg.phase_c_min +
                             (cfg.phase_c_max - cfg.phase_c_min) * i / (k - 1);
            const double t = cfg.phase_t_min +
                             (cfg.phase_t_max - cfg.phase_t_min) * j / (k - 1);
            const PhaseVerdict v = phase_classify(c, t);
            std::ostringstream row;
            row << g17(c) << ',' << g17(t) << ','
                << (v.region == PhaseRegion::worst_case_fails ? "worst-case-fails"
                                                              : "worst-case-holds")
                << ',' << g17(v.sup_risk) << ',' << g17(v.ml_limit) << ',' << g17(v.gap)
                << ',' << (v.epsilon ? g17(*v.epsilon) : std::string());
            rows[cell] = row.str();
        });
        auto out = open_out(cfg.out);
        out << "c,t,region,sup_R,ml_limit,gap,epsilon\n";
        for (const auto& r : rows) out << r << "\n";
        if (!out) throw ConfigError("write failure on " + cfg.out);
        return kExitOk;
    });
}

int cmd_risk(const ExperimentConfig& cfg) {
    return run_guarded(cfg, [&] {
        const double c = resolve_c(cfg.c, cfg.p);
        const MatrixXd sigma = MatrixXd::Identity(cfg.p, cfg.p);
        const DesignMatrix design =
            sample_design(cfg.n, cfg.p, sigma, EntryLaw::standard_normal, cfg.seed);
        const VectorXd beta =
            std::sqrt(cfg.snr) * random_unit_direction(cfg.p, cfg.seed);
        const RiskReport rep = risk_report(c, design, sigma, beta);

        ModelSpec spec{cfg.n, cfg.p, sigma, beta};
        const ResponseVector y = sample_response(spec, design, cfg.seed);
        const PlugInResult plug = delta_hat_plug_in(y, c, cfg.n, cfg.p);

        json report = {
            {"n", cfg.n},
            {"p", cfg.p},
            {"c", c},
            {"t", static_cast<double>(cfg.p) / cfg.n},
            {"seed", cfg.seed},
            {"rho1_ml", rep.rho1_ml},
            {"rho1_c", rep.rho1_c},
            {"rho2_ml", rep.rho2_ml},
            {"rho2_c", rep.rho2_c},
            {"rel_oos", rep.rel_oos},
            {"ncp", rep.ncp},
            {"snr", rep.snr},
            {"delta_hat", plug.delta_hat},
            {"plug_in_risk", plug.risk},
        };

        bool ok = true;
        if (cfg.verify) {
            const auto [mc1, mc2] = mc_risk(c, design, sigma, beta, cfg.reps, cfg.seed);
            const bool pass1 = std::abs(mc1.mean - rep.rho1_c) <= 4.0 * mc1.se;
            const bool pass2 = std::abs(mc2.mean - rep.rho2_c) <= 4.0 * mc2.se;
            report["verify"] = {{"mc_rho1", mc1.mean}, {"mc_rho1_se", mc1.se},
                                {"mc_rho2", mc2.mean}, {"mc_rho2_se", mc2.se},
                                {"pass", pass1 && pass2}};
            ok = pass1 && pass2;
        }
        emit_report(cfg, report);
        return ok ? kExitOk : kExitVerifyFail;
    });
}

int cmd_rmt_check(const ExperimentConfig& cfg) {
    return run_guarded(cfg, [&] {
        json checks = json::array();
        bool all_pass = true;

        for (double t : {0.1, 0.25, 0.5, 0.9}) {
            const LemmaB1Result r = lemma_b1(t);
            const double err = std::abs(r.closed - *r.quadrature);
            const bool pass = err <= 1e-8;
            all_pass = all_pass && pass;
            checks.push_back({{"name", "integral_identity"},
                              {"t", t},
                              {"closed", r.closed},
                              {"quadrature", *r.quadrature},
                              {"abs_error", err},
                              {"pass", pass}});
        }
        checks.push_back({{"name", "integral_identity_t0"},
                          {"t", 0.0},
                          {"closed", lemma_b1(0.0).closed},
                          {"pass", lemma_b1(0.0).closed == 0.0}});

        const double t = static_cast<double>(cfg.rmt_p) / cfg.rmt_n;
        const MatrixXd v = sample_entry_matrix(cfg.rmt_n, cfg.rmt_p,
                                               EntryLaw::standard_normal, cfg.seed);
        MatrixXd vtv = MatrixXd::Zero(cfg.rmt_p, cfg.rmt_p);
        vtv.selfadjointView<Eigen::Lower>().rankUpdate(v.transpose());
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(vtv.selfadjointView<Eigen::Lower>(),
                                                   Eigen::EigenvaluesOnly);
        const SpectrumReport rep =
            spectrum_diagnostics(es.eigenvalues(), cfg.rmt_n, cfg.rmt_p);
        const bool inv_pass =
            std::abs(rep.inv_sum - rep.inv_sum_target) <= 0.05 * rep.inv_sum_target;
        const bool edge_pass =
            std::abs(rep.min_over_n - rep.target_min) <= 0.10 * rep.target_min;
        all_pass = all_pass && inv_pass && edge_pass;
        checks.push_back({{"name", "spectrum_inverse_sum"},
                          {"t", t},
                          {"value", rep.inv_sum},
                          {"target", rep.inv_sum_target},
                          {"pass", inv_pass}});
        checks.push_back({{"name", "spectrum_min_eigenvalue"},
                          {"t", t},
                          {"value", rep.min_over_n},
                          {"target", rep.target_min},
                          {"pass", edge_pass}});
        checks.push_back({{"name", "spectrum_ks_distance"},
                          {"t", t},
                          {"value", rep.ks_distance},
                          {"pass", rep.ks_distance < 0.05}});
        all_pass = all_pass && (rep.ks_distance < 0.05);

        emit_report(cfg, json{{"all_pass", all_pass}, {"checks", checks}});
        return all_pass ? kExitOk : kExitVerifyFail;
    });
}

int cmd_verify(const ExperimentConfig& cfg) {
    return run_guarded(cfg, [&] {
        json checks = json::array();
        bool all_pass = true;
        auto record = [&](const std::string& name, bool pass, json detail) {
            detail["name"] = name;
            detail["pass"] = pass;
            checks.push_back(detail);
            all_pass = all_pass && pass;
        };

        // inverse-moment engine vs Monte Carlo
        {
            const bool exact1 = inv_moment(4, 0.0, 1) == 0.5;
            const bool exact2 = inv_moment(6, 0.0, 2) == 0.125;
            record("inv_moment_exact", exact1 && exact2, {});
            const long reps = std::max<long>(cfg.reps, 200000);
            struct Q { int k; double lam; int order; };
            int qi = 0;
            for (const Q& q : {Q{5, 2.0, 1}, Q{12, 7.5, 2}, Q{30, 40.0, 1}}) {
                const double series = inv_moment(q.k, q.lam, q.order);
                const McEstimate mc =
                    mc_inv_moment(q.k, q.lam, q.order, reps, cfg.seed + qi++);
                record("inv_moment_vs_mc", std::abs(series - mc.mean) <= 4.0 * mc.se,
                       {{"k", q.k}, {"lambda", q.lam}, {"order", q.order},
                        {"series", series}, {"mc", mc.mean}, {"se", mc.se}});
            }
        }

        // closed-form risks vs Monte Carlo (the fault hook flips the sign of
        // the subtracted middle term of the out-of-sample formula)
        {
            const int n = 40, p = 10;
            const MatrixXd sigma = MatrixXd::Identity(p, p);
            const DesignMatrix design =
                sample_design(n, p, sigma, EntryLaw::standard_normal, cfg.seed + 11);
            const double mid_sign = cfg.inject_fault ? -1.0 : 1.0;
            int bi = 0;
            for (double scale : {0.0, 2.0}) {
                const VectorXd beta = scale * random_unit_direction(p, cfg.seed + 13 + bi++);
                const double closed =
                    detail::shrink_risk_out_signed(js_c(p), design, sigma, beta, mid_sign);
                const double closed_in = shrink_risk_in(js_c(p), n, p,
                                                        beta.dot(design.gram * beta));
                const auto [mc1, mc2] =
                    mc_risk(js_c(p), design, sigma, beta, cfg.reps, cfg.seed + 17);
                record("risk_out_vs_mc", std::abs(closed - mc2.mean) <= 4.0 * mc2.se,
                       {{"beta_scale", scale}, {"closed", closed}, {"mc", mc2.mean},
                        {"se", mc2.se}});
                record("risk_in_vs_mc", std::abs(closed_in - mc1.mean) <= 4.0 * mc1.se,
                       {{"beta_scale", scale}, {"closed", closed_in}, {"mc", mc1.mean},
                        {"se", mc1.se}});
            }
        }

        // integral identity
        for (double t : {0.1, 0.25, 0.5, 0.9}) {
            const LemmaB1Result r = lemma_b1(t);
            record("integral_identity", std::abs(r.closed - *r.quadrature) <= 1e-8,
                   {{"t", t}, {"closed", r.closed}, {"quadrature", *r.quadrature}});
        }

        // design-averaged comparison: shrinkage never loses on average, and
        // wins strictly at beta = 0
        {
            const int n = 60, p = 20;
            const MatrixXd sigma = MatrixXd::Identity(p, p);
            const VectorXd beta5 = std::sqrt(5.0) * random_unit_direction(p, cfg.seed + 23);
            const auto r5 = mc_unconditional(js_c(p), n, p, sigma, beta5, 200, 0,
                                             cfg.seed + 29);
            const double se5 = std::hypot(r5.js.se, r5.ml.se);
            record("unconditional_direction", r5.js.mean <= r5.ml.mean + 2.0 * se5,
                   {{"js", r5.js.mean}, {"ml", r5.ml.mean}, {"combined_se", se5}});
            const auto r0 = mc_unconditional(js_c(p), n, p, sigma, VectorXd::Zero(p), 200,
                                             0, cfg.seed + 31);
            const double se0 = std::hypot(r0.js.se, r0.ml.se);
            record("unconditional_strict_at_zero", r0.js.mean < r0.ml.mean - 2.0 * se0,
                   {{"js", r0.js.mean}, {"ml", r0.ml.mean}, {"combined_se", se0}});
        }

        // quadratic-form concentration bound
        {
            const int n = 200, p = 50;
            const VectorXd w = random_unit_direction(p, cfg.seed + 37);
            const QuadFormResult qf =
                mc_quadratic_form(w, n, EntryLaw::standard_normal, 1000, cfg.seed + 41);
            const bool mean_ok =
                std::abs(qf.estimate.mean - 1.0) <= 4.0 * qf.estimate.se;
            const bool var_ok = qf.variance <= (3.0 + 1.0) / n * 1.5;
            record("quadratic_form_concentration", mean_ok && var_ok,
                   {{"mean", qf.estimate.mean}, {"variance", qf.variance},
                    {"bound", 4.0 / n * 1.5}});
        }

        emit_report(cfg, json{{"all_pass", all_pass}, {"checks", checks}});
        return all_pass ? kExitOk : kExitVerifyFail;
    });
}

}  // namespace shrinkrisk
