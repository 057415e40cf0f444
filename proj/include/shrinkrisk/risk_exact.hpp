#pragma once

#include "shrinkrisk/linmodel.hpp"

namespace shrinkrisk {

// James-Stein tuning parameter for dimension p.
inline double js_c(int p) { return (static_cast<double>(p) - 2.0) / static_cast<double>(p); }

struct RiskReport {
    double rho1_ml = 0.0;
    double rho1_c = 0.0;
    double rho2_ml = 0.0;
    double rho2_c = 0.0;
    double rel_oos = 0.0;  // rho2_c / rho2_ml
    double ncp = 0.0;      // beta' X'X beta
    double snr = 0.0;      // beta' Sigma beta
};

// trace(Sigma (X'X)^{-1}), computed by solving against the columns of Sigma.
double trace_sigma_gram_inv(const DesignMatrix& design, const MatrixXd& sigma);

// Exact ML risks (p/n, trace(Sigma (X'X)^{-1})); independent of beta.
std::pair<double, double> ml_risks(const DesignMatrix& design, const MatrixXd& sigma);

// Exact in-sample risk of the shrinkage estimator with tuning c:
//   p/n - (1/n) [2cp(p-2) - c^2 p^2] E[1/chi^2_p(ncp)].
double shrink_risk_in(double c, int n, int p, double ncp);

// Exact out-of-sample risk of the shrinkage estimator, conditional on X:
//   trace(Sigma(X'X)^{-1}) [1 - 2cp M1 + (c^2+4c/p) p^2 M2]
//     + (c^2+4c/p) p^2 (beta'Sigma beta) M4
// with M1, M2, M4 the inverse moments of chi^2_p, chi^2_{p+2}, chi^2_{p+4}
// (orders 1, 2, 2) at noncentrality beta'X'X beta.
double shrink_risk_out(double c, const DesignMatrix& design, const MatrixXd& sigma,
                       const VectorXd& beta);

// Same risk through the other algebraic grouping (shared trace pulled out of
// the mixed second-moment term last); used to cross-check the main route.
double shrink_risk_out_alt(double c, const DesignMatrix& design, const MatrixXd& sigma,
                           const VectorXd& beta);

// shrink_risk_out / rho2_ml.
double relative_oos(double c, const DesignMatrix& design, const MatrixXd& sigma,
                    const VectorXd& beta);

RiskReport risk_report(double c, const DesignMatrix& design, const MatrixXd& sigma,
                       const VectorXd& beta);

namespace detail {
// Fault-injection hook for the verification suite: mid_sign multiplies the
// subtracted middle term (-2cp M1); mid_sign = 1 is the correct formula.
double shrink_risk_out_signed(double c, const DesignMatrix& design, const MatrixXd& sigma,
                              const VectorXd& beta, double mid_sign);
}  // namespace detail

}  // namespace shrinkrisk
