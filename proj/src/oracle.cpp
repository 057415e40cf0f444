#include "shrinkrisk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "shrinkrisk/risk_exact.hpp"
#include "shrinkrisk/rng.hpp"

namespace shrinkrisk {

namespace {

// Replications are processed in fixed-size blocks; each block draws from its
// own (seed, block-index) generator and block sums are combined in index
// order, so results do not depend on how blocks are scheduled.
constexpr long kBlock = 8192;

inline std::uint64_t stream_id(std::uint64_t tag, std::uint64_t block) {
    return (tag << 40) ^ block;
}

McEstimate finalize(double sum, double sumsq, long reps, std::uint64_t seed) {
    McEstimate e;
    e.reps = reps;
    e.seed = seed;
    e.mean = sum / reps;
    const double var = (sumsq - sum * sum / reps) / (reps - 1);
    e.se = std::sqrt(std::max(var, 0.0) / reps);
    return e;
}

}  // namespace

std::pair<McEstimate, McEstimate> mc_risk(double c, const DesignMatrix& design,
                                          const MatrixXd& sigma, const VectorXd& beta,
                                          long reps, std::uint64_t seed) {
    const int n = design.n();
    const int p = design.p();
    if (reps < 100) throw std::invalid_argument("mc_risk: need reps >= 100");
    if (!(c >= 0.0)) throw std::invalid_argument("mc_risk: need c >= 0");
    if (sigma.rows() != p || beta.size() != p) {
        throw std::invalid_argument("mc_risk: dimension mismatch");
    }
    Eigen::LLT<MatrixXd> llt(design.gram);
    if (llt.info() != Eigen::Success) throw DegenerateDesign("mc_risk: singular Gram");
    const MatrixXd proj = llt.solve(design.x.transpose());  // (X'X)^{-1} X'
    const MatrixXd gram_n = design.gram / static_cast<double>(n);

    double s1 = 0.0, q1 = 0.0, s2 = 0.0, q2 = 0.0;
    VectorXd u(n), bhat(p), diff(p);
    for (long b0 = 0; b0 < reps; b0 += kBlock) {
        auto rng = make_rng(seed, stream_id(1, static_cast<std::uint64_t>(b0 / kBlock)));
        std::normal_distribution<double> normal;
        double bs1 = 0.0, bq1 = 0.0, bs2 = 0.0, bq2 = 0.0;
        const long hi = std::min(b0 + kBlock, reps);
        for (long r = b0; r < hi; ++r) {
            for (int i = 0; i < n; ++i) u(i) = normal(rng);
            bhat.noalias() = beta + proj * u;
            if (c != 0.0) {
                const double scale = bhat.dot(design.gram * bhat);
                bhat *= (1.0 - c * p / scale);
            }
            diff = bhat - beta;
            const double v1 = diff.dot(gram_n * diff);
            const double v2 = diff.dot(sigma * diff);
            bs1 += v1;
            bq1 += v1 * v1;
            bs2 += v2;
            bq2 += v2 * v2;
        }
        s1 += bs1;
        q1 += bq1;
        s2 += bs2;
        q2 += bq2;
    }
    return {finalize(s1, q1, reps, seed), finalize(s2, q2, reps, seed)};
}

McEstimate mc_inv_moment(int k, double lambda, int order, long reps, std::uint64_t seed) {
    if (order != 1 && order != 2) throw std::invalid_argument("mc_inv_moment: order in {1,2}");
    if (k <= 2 * order) throw std::invalid_argument("mc_inv_moment: moment not finite");
    if (!(lambda >= 0.0)) throw std::invalid_argument("mc_inv_moment: lambda >= 0");
    if (reps < 10000) throw std::invalid_argument("mc_inv_moment: need reps >= 1e4");
    const double shift = std::sqrt(lambda);
    double sum = 0.0, sumsq = 0.0;
    for (long b0 = 0; b0 < reps; b0 += kBlock) {
        auto rng = make_rng(seed, stream_id(2, static_cast<std::uint64_t>(b0 / kBlock)));
        std::normal_distribution<double> normal;
        std::chi_squared_distribution<double> chisq(k - 1);
        double bs = 0.0, bq = 0.0;
        const long hi = std::min(b0 + kBlock, reps);
        for (long r = b0; r < hi; ++r) {
            const double z = normal(rng) + shift;
            const double x = chisq(rng) + z * z;
            const double v = (order == 1) ? 1.0 / x : 1.0 / (x * x);
            bs += v;
            bq += v * v;
        }
        sum += bs;
        sumsq += bq;
    }
    return finalize(sum, sumsq, reps, seed);
}

UnconditionalResult mc_unconditional(double c, int n, int p, const MatrixXd& sigma,
                                     const VectorXd& beta, int reps_design,
                                     int /*reps_noise*/, std::uint64_t seed) {
    if (reps_design < 50) throw std::invalid_argument("mc_unconditional: need reps_design >= 50");
    if (sigma.rows() != p || beta.size() != p) {
        throw std::invalid_argument("mc_unconditional: dimension mismatch");
    }
    UnconditionalResult res;
    double sj = 0.0, qj = 0.0, sm = 0.0, qm = 0.0;
    long used = 0;
    for (int r = 0; r < reps_design; ++r) {
        DesignMatrix design;
        try {
            design = sample_design(n, p, sigma, EntryLaw::standard_normal,
                                   mix64(seed) + static_cast<std::uint64_t>(r));
        } catch (const DegenerateDesign&) {
            ++res.skipped;
            continue;
        }
        const double ml = trace_sigma_gram_inv(design, sigma);
        const double js = shrink_risk_out(c, design, sigma, beta);
        sj += js;
        qj += js * js;
        sm += ml;
        qm += ml * ml;
        ++used;
    }
    if (used < 2) throw std::runtime_error("mc_unconditional: too many degenerate draws");
    res.js = finalize(sj, qj, used, seed);
    res.ml = finalize(sm, qm, used, seed);
    return res;
}

QuadFormResult mc_quadratic_form(const VectorXd& w, int n, EntryLaw law, long reps,
                                 std::uint64_t seed) {
    const int p = static_cast<int>(w.size());
    if (std::abs(w.norm() - 1.0) > 1e-8) {
        throw std::invalid_argument("mc_quadratic_form: w must be a unit vector");
    }
    if (n < 1 || reps < 2) throw std::invalid_argument("mc_quadratic_form: bad arguments");

    double sum = 0.0, sumsq = 0.0;
    for (long b0 = 0; b0 < reps; b0 += kBlock) {
        auto rng = make_rng(seed, stream_id(3, static_cast<std::uint64_t>(b0 / kBlock)));
        std::normal_distribution<double> normal;
        std::bernoulli_distribution coin(0.5);
        const double half = std::sqrt(3.0);
        std::uniform_real_distribution<double> unif(-half, half);
        double bs = 0.0, bq = 0.0;
        const long hi = std::min(b0 + kBlock, reps);
        for (long r = b0; r < hi; ++r) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                double dot = 0.0;
                for (int j = 0; j < p; ++j) {
                    double e;
                    switch (law) {
                        case EntryLaw::standard_normal: e = normal(rng); break;
                        case EntryLaw::rademacher: e = coin(rng) ? 1.0 : -1.0; break;
                        default: e = unif(rng); break;
                    }
                    dot += e * w(j);
                }
                acc += dot * dot;
            }
            const double v = acc / n;
            bs += v;
            bq += v * v;
        }
        sum += bs;
        sumsq += bq;
    }
    QuadFormResult out;
    out.estimate = finalize(sum, sumsq, reps, seed);
    out.variance = (sumsq - sum * sum / reps) / (reps - 1);
    return out;
}

}  // namespace shrinkrisk
