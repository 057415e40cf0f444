#pragma once

#include <cmath>
#include <utility>

namespace shrinkrisk {

// Golden-section maximization of f on [a, b]. Returns (argmax, f(argmax)).
// Assumes f is unimodal on the bracket; tol is measured on the argument.
template <typename F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol,
                                     int max_iter = 200) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    const double xm = 0.5 * (a + b);
    return {xm, f(xm)};
}

}  // namespace shrinkrisk
