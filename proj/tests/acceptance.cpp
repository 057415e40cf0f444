// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "shrinkrisk/asymptotics.hpp"
#include "shrinkrisk/chisq_moments.hpp"
#include "shrinkrisk/commands.hpp"
#include "shrinkrisk/linmodel.hpp"
#include "shrinkrisk/oracle.hpp"
#include "shrinkrisk/risk_exact.hpp"
#include "shrinkrisk/rmt.hpp"
#include "shrinkrisk/rng.hpp"

using namespace shrinkrisk;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("%s %s  %s\n", id.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

MatrixXd random_spd(int p, std::uint64_t seed, const VectorXd& eigenvalues) {
    std::mt19937_64 rng = make_rng(seed, 0);
    std::normal_distribution<double> gauss;
    MatrixXd g(p, p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) g(i, j) = gauss(rng);
    const Eigen::HouseholderQR<MatrixXd> qr(g);
    const MatrixXd q = qr.householderQ() * MatrixXd::Identity(p, p);
    return q * eigenvalues.asDiagonal() * q.transpose();
}

MatrixXd random_spd_range(int p, std::uint64_t seed, double lo, double hi) {
    std::mt19937_64 rng = make_rng(seed, 1);
    std::uniform_real_distribution<double> unif(lo, hi);
    VectorXd eig(p);
    for (int i = 0; i < p; ++i) eig(i) = unif(rng);
    return random_spd(p, seed, eig);
}

VectorXd random_direction(int p, std::uint64_t seed) {
    std::mt19937_64 rng = make_rng(seed, 2);
    std::normal_distribution<double> gauss;
    VectorXd v(p);
    for (int i = 0; i < p; ++i) v(i) = gauss(rng);
    return v / v.norm();
}

std::string slurp(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// A1: exact ML risks on random instances plus the c = 0 sampler cross-check.
void a1() {
    bool pass = true;
    std::string why;
    std::mt19937_64 rng = make_rng(101, 0);
    for (int inst = 0; inst < 10 && pass; ++inst) {
        const int p = 5 + static_cast<int>(rng() % 26);       // 5..30
        const int n = p + 10 + static_cast<int>(rng() % 61);  // <= 100
        const MatrixXd sigma = random_spd_range(p, 500 + inst, 0.5, 2.0);
        const DesignMatrix d =
            sample_design(n, p, sigma, EntryLaw::standard_normal, 600 + inst);
        const auto [rho1, rho2] = ml_risks(d, sigma);
        if (rho1 != static_cast<double>(p) / n) {
            pass = false;
            why = "rho1 not exactly p/n";
            break;
        }
        const double direct = (sigma * d.gram.inverse()).trace();
        if (std::abs(rho2 - direct) > 1e-10 * std::abs(direct)) {
            pass = false;
            why = "rho2 disagrees with the direct trace";
            break;
        }
        const VectorXd beta = random_direction(p, 700 + inst);
        const auto [mc1, mc2] = mc_risk(0.0, d, sigma, beta, 100000, 800 + inst);
        if (std::abs(mc1.mean - rho1) > 4.0 * mc1.se ||
            std::abs(mc2.mean - rho2) > 4.0 * mc2.se) {
            pass = false;
            why = "sampler disagrees beyond 4 SE at instance " + std::to_string(inst);
        }
    }
    report("A1", pass, pass ? "exact ML risks on 10 random instances" : why);
}

// A2: inverse-moment engine against its Monte Carlo oracle.
void a2() {
    bool pass = inv_moment(4, 0.0, 1) == 0.5 && inv_moment(6, 0.0, 2) == 0.125;
    std::string why = pass ? "" : "exact central values off";
    std::mt19937_64 rng = make_rng(202, 0);
    std::uniform_real_distribution<double> lam_dist(0.0, 100.0);
    for (int q = 0; q < 20 && pass; ++q) {
        const int order = 1 + q % 2;
        // keep k large enough that the sampled estimator has finite variance
        const int kmin = order == 1 ? 5 : 9;
        const int k = kmin + static_cast<int>(rng() % (51 - kmin));
        const double lam = lam_dist(rng);
        const double series = inv_moment(k, lam, order);
        const McEstimate mc = mc_inv_moment(k, lam, order, 10000000, 900 + q);
        if (std::abs(series - mc.mean) > 4.0 * mc.se) {
            pass = false;
            std::ostringstream ss;
            ss << "query k=" << k << " lambda=" << lam << " order=" << order
               << " off by " << std::abs(series - mc.mean) / mc.se << " SE";
            why = ss.str();
        }
    }
    report("A2", pass, pass ? "series matches 20 sampled queries within 4 SE" : why);
}

// A3: closed-form out-of-sample risk against the sampler on stress instances.
void a3() {
    bool pass = true;
    std::string why;
    for (int inst = 0; inst < 10 && pass; ++inst) {
        const int p = 5 + inst;         // 5..14
        const int n = 30 + 5 * inst;    // 30..75
        MatrixXd sigma;
        VectorXd beta;
        if (inst == 0) {
            sigma = MatrixXd::Identity(p, p);
            beta = VectorXd::Zero(p);
        } else if (inst == 1) {
            sigma = MatrixXd::Identity(p, p);
            beta = std::sqrt(1000.0) * random_direction(p, 1000 + inst);
        } else if (inst == 2) {
            // condition number 1e4
            VectorXd eig(p);
            for (int i = 0; i < p; ++i)
                eig(i) = std::pow(10.0, -2.0 + 4.0 * i / (p - 1));
            sigma = random_spd(p, 1000 + inst, eig);
            beta = random_direction(p, 1100 + inst);
        } else {
            sigma = random_spd_range(p, 1000 + inst, 0.5, 2.0);
            beta = (0.3 * inst) * random_direction(p, 1100 + inst);
        }
        const DesignMatrix d =
            sample_design(n, p, sigma, EntryLaw::standard_normal, 1200 + inst);
        const double c = js_c(p);
        const double closed = shrink_risk_out(c, d, sigma, beta);
        const auto [mc1, mc2] = mc_risk(c, d, sigma, beta, 200000, 1300 + inst);
        (void)mc1;
        if (std::abs(closed - mc2.mean) > 4.0 * mc2.se) {
            pass = false;
            std::ostringstream ss;
            ss << "instance " << inst << ": closed " << closed << " vs mc " << mc2.mean
               << " (se " << mc2.se << ")";
            why = ss.str();
        }
    }
    report("A3", pass, pass ? "closed form within 4 SE on 10 stress instances" : why);
}

// A4: in-sample dominance and the location of the minimum in c.
void a4() {
    bool pass = true;
    std::string why;
    for (const auto [n, p] : {std::pair{20, 5}, std::pair{100, 40}}) {
        const double c0 = js_c(p);
        const double step = 2.0 * c0 / 40.0;
        for (double ncp : {0.0, 10.0, 1000.0}) {
            double best = 1e300, argbest = -1.0;
            for (int i = 0; i <= 40; ++i) {
                const double c = step * i;
                const double v = shrink_risk_in(c, n, p, ncp);
                if (i > 0 && i < 40 && v >= static_cast<double>(p) / n) {
                    pass = false;
                    why = "no strict interior dominance";
                }
                if (v < best) {
                    best = v;
                    argbest = c;
                }
            }
            if (std::abs(argbest - c0) > step + 1e-12) {
                pass = false;
                std::ostringstream ss;
                ss << "minimum at c=" << argbest << " not within a step of " << c0;
                why = ss.str();
            }
        }
    }
    report("A4", pass, pass ? "strict dominance, minimum at (p-2)/p" : why);
}

// A5: integral identity across aspect ratios.
void a5() {
    bool pass = true;
    std::string why;
    for (double t : {0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99}) {
        const LemmaB1Result r = lemma_b1(t);
        if (!r.quadrature || std::abs(r.closed - *r.quadrature) > 1e-8) {
            pass = false;
            why = "quadrature off at t=" + std::to_string(t);
        }
    }
    const double target = 2.0 * std::numbers::pi / 3.0;
    if (std::abs(lemma_b1(0.25).closed - target) > 1e-12 * target) {
        pass = false;
        why = "closed form at t=0.25 off";
    }
    report("A5", pass, pass ? "closed vs quadrature within 1e-8 on 7 ratios" : why);
}

// A6: risk-ratio curves along eigenvector directions at n=200, p=160.
void a6() {
    const int n = 200, p = 160;
    const MatrixXd sigma = MatrixXd::Identity(p, p);
    const double c = js_c(p);
    int good_seeds = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DesignMatrix d =
            sample_design(n, p, sigma, EntryLaw::standard_normal, 2000 + seed);
        const double rho2_ml = trace_sigma_gram_inv(d, sigma);
        bool seed_ok = true;

        double best_ratio = 0.0, best_snr = 0.0;
        for (int i = 0; i < 60; ++i) {
            const double snr = 0.1 * std::pow(10000.0, i / 59.0);
            const VectorXd beta = beta_along_eigvec(d, sigma, 1, snr);
            const double ratio = shrink_risk_out(c, d, sigma, beta) / rho2_ml;
            if (ratio > best_ratio) {
                best_ratio = ratio;
                best_snr = snr;
            }
        }
        if (best_ratio <= 1.5 || best_snr < 10.0 || best_snr > 500.0) seed_ok = false;

        for (int idx : {40, 80, 120, 160}) {
            for (int i = 0; i < 60 && seed_ok; ++i) {
                const double snr = 0.1 * std::pow(10000.0, i / 59.0);
                const VectorXd beta = beta_along_eigvec(d, sigma, idx, snr);
                if (shrink_risk_out(c, d, sigma, beta) / rho2_ml >= 1.0) seed_ok = false;
            }
        }
        if (seed_ok) ++good_seeds;
    }
    report("A6", good_seeds >= 18,
           "qualitative curve bands held in " + std::to_string(good_seeds) + "/20 seeds");
}

// A7: convergence of the conditional risks to their limits at t = 0.5.
void a7() {
    const int n = 1000, p = 500;
    const MatrixXd sigma = MatrixXd::Identity(p, p);
    std::vector<double> err_js, err_ml;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DesignMatrix d =
            sample_design(n, p, sigma, EntryLaw::standard_normal, 3000 + seed);
        const VectorXd beta = VectorXd::Ones(p) / std::sqrt(static_cast<double>(p));
        err_js.push_back(std::abs(shrink_risk_out(1.0, d, sigma, beta) - 5.0 / 9.0));
        err_ml.push_back(std::abs(trace_sigma_gram_inv(d, sigma) - 1.0));
    }
    std::sort(err_js.begin(), err_js.end());
    std::sort(err_ml.begin(), err_ml.end());
    const double med_js = err_js[err_js.size() / 2];
    const double med_ml = err_ml[err_ml.size() / 2];
    std::ostringstream ss;
    ss << "median errors js=" << med_js << " ml=" << med_ml;
    report("A7", med_js <= 0.05 && med_ml <= 0.05, ss.str());
}

// A8: phase diagram sign agreement and the c = 1 boundary location.
void a8() {
    bool pass = true;
    std::string why;
    const int k = 60;
    for (int i = 0; i < k && pass; ++i) {
        for (int j = 0; j < k && pass; ++j) {
            const double c = 3.0 * i / (k - 1);
            const double t = 0.95 * j / (k - 1);
            try {
                (void)phase_classify(c, t);  // throws on sign disagreement
            } catch (const std::exception& e) {
                pass = false;
                why = std::string("grid cell (") + std::to_string(c) + "," +
                      std::to_string(t) + "): " + e.what();
            }
        }
    }
    if (pass) {
        const double cell = 0.95 / (k - 1);
        double first_fail = -1.0;
        for (int j = 0; j < k; ++j) {
            const double t = 0.95 * j / (k - 1);
            if (phase_classify(1.0, t).region == PhaseRegion::worst_case_fails) {
                first_fail = t;
                break;
            }
        }
        if (first_fail < 0.0 || std::abs(first_fail - 1.0 / 9.0) > cell) {
            pass = false;
            why = "c=1 boundary found at t=" + std::to_string(first_fail);
        }
    }
    report("A8", pass, pass ? "60x60 grid agrees; c=1 boundary at t=1/9" : why);
}

// A9: design-averaged comparison against maximum likelihood.
void a9() {
    const int n = 60, p = 20;
    const MatrixXd sigma = MatrixXd::Identity(p, p);
    const double c = js_c(p);
    bool pass = true;
    std::string why;
    for (double b2 : {0.0, 1.0, 5.0, 25.0}) {
        const VectorXd beta = std::sqrt(b2) * random_direction(p, 4000);
        const UnconditionalResult r = mc_unconditional(c, n, p, sigma, beta, 400, 0, 4100);
        const double se = std::hypot(r.js.se, r.ml.se);
        if (r.js.mean > r.ml.mean + 2.0 * se) {
            pass = false;
            why = "average loss at beta'beta=" + std::to_string(b2);
        }
        if (b2 == 0.0 && !(r.js.mean < r.ml.mean - 2.0 * se)) {
            pass = false;
            why = "no strict win at beta=0";
        }
    }
    report("A9", pass, pass ? "never worse on average, strictly better at zero" : why);
}

// A10: Gram-spectrum diagnostics at n = 2000, t = 0.5.
void a10() {
    const int n = 2000, p = 1000;
    int good = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DesignMatrix d = sample_design(n, p, MatrixXd::Identity(p, p),
                                             EntryLaw::standard_normal, 5000 + seed);
        const SpectrumReport rep =
            spectrum_diagnostics(d.spectrum * static_cast<double>(n), n, p);
        const bool inv_ok =
            std::abs(rep.inv_sum - rep.inv_sum_target) <= 0.05 * rep.inv_sum_target;
        const bool min_ok =
            std::abs(rep.min_over_n - rep.target_min) <= 0.10 * rep.target_min;
        if (inv_ok && min_ok) ++good;
    }
    report("A10", good >= 18,
           "spectrum diagnostics held in " + std::to_string(good) + "/20 seeds");
}

// A11: byte-identical reruns of the CSV commands, including across thread counts.
void a11() {
    const fs::path dir = fs::temp_directory_path() / "shrinkrisk_acceptance";
    fs::create_directories(dir);
    bool pass = true;
    std::string why;

    ExperimentConfig fig;
    fig.snr_points = 20;
    fig.out = (dir / "fig_a.csv").string();
    if (cmd_figure1(fig) != kExitOk) {
        pass = false;
        why = "figure command failed";
    }
    const std::string fig_ref = slurp(fig.out);
    fig.out = (dir / "fig_b.csv").string();
    fig.threads = 4;
    if (pass && (cmd_figure1(fig) != kExitOk || slurp(fig.out) != fig_ref)) {
        pass = false;
        why = "figure output not byte-identical across runs/threads";
    }

    ExperimentConfig ph;
    ph.phase_points = 20;
    ph.out = (dir / "phase_a.csv").string();
    if (pass && cmd_phase(ph) != kExitOk) {
        pass = false;
        why = "phase command failed";
    }
    const std::string ph_ref = pass ? slurp(ph.out) : std::string();
    ph.out = (dir / "phase_b.csv").string();
    ph.threads = 4;
    if (pass && (cmd_phase(ph) != kExitOk || slurp(ph.out) != ph_ref)) {
        pass = false;
        why = "phase output not byte-identical across runs/threads";
    }
    report("A11", pass, pass ? "CSV outputs byte-identical across reruns and threads" : why);
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    a1();
    a2();
    a3();
    a4();
    a5();
    a6();
    a7();
    a8();
    a9();
    a10();
    a11();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    std::printf("%d/11 criteria passed in %llds\n", 11 - g_failures,
                static_cast<long long>(secs));
    return g_failures == 0 ? 0 : 1;
}
