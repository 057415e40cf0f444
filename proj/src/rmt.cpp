#include "shrinkrisk/rmt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace shrinkrisk {

namespace {

constexpr double kPi = std::numbers::pi;

// Plain recursive adaptive Simpson with absolute tolerance.
template <typename F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb,
                    double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double eps, int depth = 40) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, eps, depth);
}

}  // namespace

MPLaw::MPLaw(double t_in) : t(t_in) {
    if (!(t > 0.0 && t < 1.0)) {
        throw std::invalid_argument("MPLaw: need t in (0, 1)");
    }
    const double s = std::sqrt(t);
    a = (1.0 - s) * (1.0 - s);
    b = (1.0 + s) * (1.0 + s);
}

double mp_density(double x, double t) {
    const MPLaw law(t);
    if (x <= law.a || x >= law.b) return 0.0;
    return std::sqrt((x - law.a) * (law.b - x)) / (2.0 * kPi * t * x);
}

MPCdf::MPCdf(double t, int table_points) : law_(t) {
    if (table_points < 10) throw std::invalid_argument("MPCdf: table too small");
    const double width = law_.b - law_.a;
    xs_.resize(table_points + 1);
    cdf_.resize(table_points + 1);
    // Cumulative trapezoid of f(x(theta)) dx/dtheta on a uniform theta grid;
    // the substitution x = a + width sin^2(theta) removes the edge roots.
    const double h = (kPi / 2.0) / table_points;
    auto integrand = [&](double theta) {
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        const double x = law_.a + width * st * st;
        return width * width * 2.0 * st * st * ct * ct / (2.0 * kPi * law_.t * x);
    };
    xs_(0) = law_.a;
    cdf_(0) = 0.0;
    double prev = integrand(0.0);
    for (int i = 1; i <= table_points; ++i) {
        const double theta = h * i;
        const double cur = integrand(theta);
        const double st = std::sin(theta);
        xs_(i) = law_.a + width * st * st;
        cdf_(i) = cdf_(i - 1) + 0.5 * h * (prev + cur);
        prev = cur;
    }
    cdf_ /= cdf_(table_points);  // pin total mass to exactly 1
}

double MPCdf::operator()(double x) const {
    if (x <= xs_(0)) return 0.0;
    const int last = static_cast<int>(xs_.size()) - 1;
    if (x >= xs_(last)) return 1.0;
    const double* begin = xs_.data();
    const double* it = std::upper_bound(begin, begin + last + 1, x);
    const int hi = static_cast<int>(it - begin);
    const int lo = hi - 1;
    const double w = (x - xs_(lo)) / (xs_(hi) - xs_(lo));
    return cdf_(lo) + w * (cdf_(hi) - cdf_(lo));
}

LemmaB1Result lemma_b1(double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("lemma_b1: need t >= 0");
    LemmaB1Result res;
    if (t == 1.0) {
        res.closed = std::numeric_limits<double>::infinity();
        return res;  // quadrature reported absent
    }
    res.closed = 2.0 * kPi * std::min(1.0, t) / std::abs(1.0 - t);
    const double s = std::sqrt(t);
    const double a = (1.0 - s) * (1.0 - s);
    const double b = (1.0 + s) * (1.0 + s);
    const double width = b - a;
    if (width == 0.0) {
        res.quadrature = 0.0;
        return res;
    }
    auto integrand = [&](double theta) {
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        const double x = a + width * st * st;
        return 2.0 * width * width * st * st * ct * ct / (x * x);
    };
    res.quadrature = adaptive_simpson(integrand, 0.0, kPi / 2.0, 1e-10);
    return res;
}

double mp_mass_quadrature(double t) {
    const MPLaw law(t);
    const double width = law.b - law.a;
    auto integrand = [&](double theta) {
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        const double x = law.a + width * st * st;
        return width * width * 2.0 * st * st * ct * ct / (2.0 * kPi * law.t * x);
    };
    return adaptive_simpson(integrand, 0.0, kPi / 2.0, 1e-10);
}

double mp_mean_quadrature(double t) {
    const MPLaw law(t);
    const double width = law.b - law.a;
    auto integrand = [&](double theta) {
        const double st = std::sin(theta);
        const double ct = std::cos(theta);
        const double x = law.a + width * st * st;
        return width * width * 2.0 * st * st * ct * ct / (2.0 * kPi * law.t);
    };
    return adaptive_simpson(integrand, 0.0, kPi / 2.0, 1e-10);
}

SpectrumReport spectrum_diagnostics(const Eigen::VectorXd& v_spectrum, int n, int p) {
    if (v_spectrum.size() != p || p < 1 || n < p) {
        throw std::invalid_argument("spectrum_diagnostics: bad dimensions");
    }
    if (v_spectrum.minCoeff() < 0.0) {
        throw std::invalid_argument("spectrum_diagnostics: eigenvalues must be >= 0");
    }
    std::vector<double> lam(v_spectrum.data(), v_spectrum.data() + p);
    std::sort(lam.begin(), lam.end());  // ascending

    SpectrumReport rep;
    const double t = static_cast<double>(p) / n;
    const double s = std::sqrt(t);
    rep.target_min = (1.0 - s) * (1.0 - s);
    rep.target_max = (1.0 + s) * (1.0 + s);
    rep.inv_sum_target = (t < 1.0) ? t / (1.0 - t) : std::numeric_limits<double>::infinity();
    rep.min_over_n = lam.front() / n;
    rep.max_over_n = lam.back() / n;

    if (lam.front() == 0.0) {
        rep.inv_sum = std::numeric_limits<double>::infinity();
    } else {
        double sum = 0.0;
        for (double l : lam) sum += 1.0 / l;
        rep.inv_sum = sum;
    }

    if (t < 1.0 && t > 0.0) {
        const MPCdf cdf(t);
        double d = 0.0;
        for (int i = 0; i < p; ++i) {
            const double F = cdf(lam[i] / n);
            d = std::max(d, std::abs(static_cast<double>(i + 1) / p - F));
            d = std::max(d, std::abs(static_cast<double>(i) / p - F));
        }
        rep.ks_distance = d;
    } else {
        rep.ks_distance = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

}  // namespace shrinkrisk
