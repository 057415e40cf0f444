#include "shrinkrisk/chisq_moments.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace shrinkrisk {

namespace {

void check_query(const InvMomentQuery& q) {
    if (q.order != 1 && q.order != 2) {
        throw std::invalid_argument("inv_moment: order must be 1 or 2, got " +
                                    std::to_string(q.order));
    }
    if (q.k < 2 * q.order + 1) {
        throw std::invalid_argument("inv_moment: need k > 2*order for a finite moment, got k=" +
                                    std::to_string(q.k) + ", order=" + std::to_string(q.order));
    }
    if (!(q.lambda >= 0.0)) {
        throw std::invalid_argument("inv_moment: lambda must be >= 0");
    }
    if (!(q.tol > 0.0) || q.tol > 1e-6) {
        throw std::invalid_argument("inv_moment: tol must lie in (0, 1e-6]");
    }
}

// prod_{i=1..order} 1/(k + 2j - 2i), the central inverse moment at k + 2j dof.
inline double central_factor(int k, long j, int order) {
    const double d1 = static_cast<double>(k) + 2.0 * static_cast<double>(j) - 2.0;
    if (order == 1) return 1.0 / d1;
    return 1.0 / (d1 * (d1 - 2.0));
}

}  // namespace

double inv_moment(const InvMomentQuery& q) {
    check_query(q);
    if (q.lambda == 0.0) return central_factor(q.k, 0, q.order);

    const double mu = q.lambda / 2.0;
    const long jm = static_cast<long>(std::floor(mu));

    // Poisson pmf at the mode, then recurrences outward.
    const double log_pmf_mode = -mu + static_cast<double>(jm) * std::log(mu) -
                                std::lgamma(static_cast<double>(jm) + 1.0);
    const double pmf_mode = std::exp(log_pmf_mode);

    double sum = pmf_mode * central_factor(q.k, jm, q.order);

    // Upward pass. Terms t_j = pmf(j) * f(j) decrease in j beyond the mode
    // (both factors do), so the remainder after J is bounded by the Poisson
    // tail mass times f(J+1), and the tail mass by a geometric series.
    double pmf = pmf_mode;
    for (long j = jm + 1;; ++j) {
        pmf *= mu / static_cast<double>(j);
        sum += pmf * central_factor(q.k, j, q.order);
        const double ratio = mu / static_cast<double>(j + 1);
        if (ratio < 1.0) {
            const double tail_mass = pmf * ratio / (1.0 - ratio);
            if (tail_mass * central_factor(q.k, j + 1, q.order) <= 0.5 * q.tol * sum) break;
        }
        if (pmf == 0.0) break;
    }

    // Downward pass. Below the mode the pmf decays at least geometrically
    // with ratio j/mu, and f(j) <= f(0), which bounds the remaining mass.
    const double f0 = central_factor(q.k, 0, q.order);
    pmf = pmf_mode;
    for (long j = jm; j >= 1; --j) {
        pmf *= static_cast<double>(j) / mu;
        sum += pmf * central_factor(q.k, j - 1, q.order);
        if (j >= 2) {
            const double ratio = static_cast<double>(j - 1) / mu;
            const double tail_mass = pmf * ratio / (1.0 - ratio);
            if (tail_mass * f0 <= 0.5 * q.tol * sum) break;
        }
        if (pmf == 0.0) break;
    }

    return sum;
}

double inv_moment(int k, double lambda, int order, double tol) {
    return inv_moment(InvMomentQuery{k, lambda, order, tol});
}

double moment_ratio(int k, double lambda, int order) {
    const double scale = std::pow(static_cast<double>(k) + lambda, order);
    return scale * inv_moment(k, lambda, order);
}

}  // namespace shrinkrisk
