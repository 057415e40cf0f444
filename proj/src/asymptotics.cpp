#include "shrinkrisk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "shrinkrisk/chisq_moments.hpp"
#include "shrinkrisk/golden.hpp"

namespace shrinkrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_regime(double c, double t) {
    if (!(t >= 0.0 && t < 1.0)) {
        throw std::invalid_argument("asymptotics: need t in [0, 1)");
    }
    if (!(c >= 0.0)) {
        throw std::invalid_argument("asymptotics: need c >= 0");
    }
}

double limit_core(double delta2, double c, double t, double last_term_denom) {
    const double ml = t / (1.0 - t);
    if (std::isinf(delta2)) return ml;
    if (!(delta2 >= 0.0)) {
        throw std::invalid_argument("asymptotics: need delta2 >= 0");
    }
    const double s = t + delta2;
    const double frac = (s > 0.0) ? t / s : 0.0;  // 0 when t = delta2 = 0
    const double first = ml * (1.0 - c * frac) * (1.0 - c * frac);
    const double second = (s > 0.0) ? c * c * t * t * delta2 / (s * s * last_term_denom) : 0.0;
    return first + second;
}

// Supremum over [0, inf] of a function given in the u = x/(1+x)
// parametrization, with an explicit boundary value at x = inf.
SupResult sup_by_reparam(const std::function<double(double)>& f_of_x, double boundary) {
    constexpr int kGrid = 1025;
    auto eval_u = [&](double u) {
        if (u >= 1.0) return boundary;
        return f_of_x(u / (1.0 - u));
    };
    int best = 0;
    double best_val = eval_u(0.0);
    for (int i = 1; i < kGrid; ++i) {
        const double v = eval_u(static_cast<double>(i) / (kGrid - 1));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    const double lo = static_cast<double>(std::max(0, best - 1)) / (kGrid - 1);
    const double hi = static_cast<double>(std::min(kGrid - 1, best + 1)) / (kGrid - 1);
    auto [u_star, val] = golden_max(eval_u, lo, hi, 1e-10);
    if (val < best_val) {  // refinement never loses to the grid seed
        u_star = static_cast<double>(best) / (kGrid - 1);
        val = best_val;
    }
    if (boundary >= val - 1e-12 * (std::abs(val) + 1.0)) {
        return {boundary, kInf};
    }
    return {val, u_star / (1.0 - u_star)};
}

}  // namespace

double r_limit(double delta2, double c, double t) {
    check_regime(c, t);
    return limit_core(delta2, c, t, 1.0);
}

double R_limit(double delta2, double c, double t) {
    check_regime(c, t);
    const double edge = (1.0 - std::sqrt(t)) * (1.0 - std::sqrt(t));
    return limit_core(delta2, c, t, edge);
}

SupResult sup_worst_case(double c, double t) {
    check_regime(c, t);
    const double boundary = t / (1.0 - t);
    return sup_by_reparam([&](double d2) { return R_limit(d2, c, t); }, boundary);
}

PlugInResult delta_hat_plug_in(const ResponseVector& y, double c, int n, int p) {
    if (!(n > p && p >= 3)) {
        throw std::invalid_argument("delta_hat_plug_in: need n > p >= 3");
    }
    if (y.y.size() != n) {
        throw std::invalid_argument("delta_hat_plug_in: response length mismatch");
    }
    PlugInResult res;
    res.delta_hat = std::max(y.y.squaredNorm() / static_cast<double>(n) - 1.0, 0.0);
    res.risk = r_limit(res.delta_hat, c, static_cast<double>(p) / n);
    return res;
}

double finite_worst_case_at(double c, double d2, const VectorXd& v_spectrum, int n, int p) {
    if (p < 3 || v_spectrum.size() != p) {
        throw std::invalid_argument("finite_worst_case: need p >= 3 and a p-point spectrum");
    }
    if (!(v_spectrum.minCoeff() > 0.0)) {
        throw std::invalid_argument("finite_worst_case: spectrum must be positive");
    }
    const double pd = p;
    const double trace = v_spectrum.cwiseInverse().sum();
    const double lam_min_n = v_spectrum.minCoeff() / static_cast<double>(n);
    const double ncp = static_cast<double>(n) * d2;
    const double cc = c * c + 4.0 * c / pd;
    return trace * (1.0 - 2.0 * c * pd * inv_moment(p, ncp, 1) +
                    cc * pd * pd * inv_moment(p + 2, ncp, 2)) +
           cc / lam_min_n * pd * pd * d2 * inv_moment(p + 4, ncp, 2);
}

SupResult finite_sup_risk(double c, const VectorXd& v_spectrum, int n, int p) {
    if (!(c >= 0.0)) throw std::invalid_argument("finite_sup_risk: need c >= 0");
    if (p < 3 || v_spectrum.size() != p) {
        throw std::invalid_argument("finite_sup_risk: need p >= 3 and a p-point spectrum");
    }
    if (!(v_spectrum.minCoeff() > 0.0)) {
        throw std::invalid_argument("finite_sup_risk: spectrum must be positive");
    }
    const double boundary = v_spectrum.cwiseInverse().sum();  // d2 -> inf limit
    return sup_by_reparam(
        [&](double d2) { return finite_worst_case_at(c, d2, v_spectrum, n, p); }, boundary);
}

PhaseVerdict phase_classify(double c, double t) {
    check_regime(c, t);
    PhaseVerdict v;
    const double thr = ((c - 2.0) / (c + 2.0)) * ((c - 2.0) / (c + 2.0));
    const bool fails = (c > 0.0 && c <= 2.0 && t > thr) || (c > 2.0 && t > 0.0);
    v.region = fails ? PhaseRegion::worst_case_fails : PhaseRegion::worst_case_holds;
    const SupResult sup = sup_worst_case(c, t);
    v.sup_risk = sup.value;
    v.arg_delta2 = sup.arg_delta2;
    v.ml_limit = t / (1.0 - t);
    v.gap = v.sup_risk - v.ml_limit;
    if (v.gap > 0.0) v.epsilon = v.gap / 2.0;
    v.pointwise_safe = (c <= 2.0);
    if (std::abs(v.gap) > 1e-9 && fails != (v.gap > 0.0)) {
        throw std::logic_error("phase_classify: analytic region disagrees with numeric supremum");
    }
    return v;
}

}  // namespace shrinkrisk
