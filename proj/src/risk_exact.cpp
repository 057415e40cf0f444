#include "shrinkrisk/risk_exact.hpp"

#include <stdexcept>

#include "shrinkrisk/chisq_moments.hpp"

namespace shrinkrisk {

double trace_sigma_gram_inv(const DesignMatrix& design, const MatrixXd& sigma) {
    if (sigma.rows() != design.p()) {
        throw std::invalid_argument("trace_sigma_gram_inv: dimension mismatch");
    }
    Eigen::LLT<MatrixXd> llt(design.gram);
    if (llt.info() != Eigen::Success) {
        throw DegenerateDesign("trace_sigma_gram_inv: Gram matrix is not SPD");
    }
    return llt.solve(sigma).trace();
}

std::pair<double, double> ml_risks(const DesignMatrix& design, const MatrixXd& sigma) {
    const double rho1 = static_cast<double>(design.p()) / static_cast<double>(design.n());
    return {rho1, trace_sigma_gram_inv(design, sigma)};
}

double shrink_risk_in(double c, int n, int p, double ncp) {
    if (p < 3) throw std::invalid_argument("shrink_risk_in: need p >= 3");
    if (!(c >= 0.0)) throw std::invalid_argument("shrink_risk_in: need c >= 0");
    if (!(ncp >= 0.0)) throw std::invalid_argument("shrink_risk_in: need ncp >= 0");
    const double pd = p;
    const double gain = 2.0 * c * pd * (pd - 2.0) - c * c * pd * pd;
    return pd / n - gain * inv_moment(p, ncp, 1) / n;
}

namespace detail {

double shrink_risk_out_signed(double c, const DesignMatrix& design, const MatrixXd& sigma,
                              const VectorXd& beta, double mid_sign) {
    const int p = design.p();
    if (p < 3) throw std::invalid_argument("shrink_risk_out: need p >= 3");
    if (beta.size() != p) throw std::invalid_argument("shrink_risk_out: dimension mismatch");
    const double pd = p;
    const double trace = trace_sigma_gram_inv(design, sigma);
    const double ncp = beta.dot(design.gram * beta);
    const double snr = beta.dot(sigma * beta);
    const double m1 = inv_moment(p, ncp, 1);
    const double m2 = inv_moment(p + 2, ncp, 2);
    const double m4 = inv_moment(p + 4, ncp, 2);
    const double cc = c * c + 4.0 * c / pd;
    return trace * (1.0 - mid_sign * 2.0 * c * pd * m1 + cc * pd * pd * m2) +
           cc * pd * pd * snr * m4;
}

}  // namespace detail

double shrink_risk_out(double c, const DesignMatrix& design, const MatrixXd& sigma,
                       const VectorXd& beta) {
    return detail::shrink_risk_out_signed(c, design, sigma, beta, 1.0);
}

double shrink_risk_out_alt(double c, const DesignMatrix& design, const MatrixXd& sigma,
                           const VectorXd& beta) {
    const int p = design.p();
    if (p < 3) throw std::invalid_argument("shrink_risk_out_alt: need p >= 3");
    const double pd = p;
    const double trace = trace_sigma_gram_inv(design, sigma);
    const double ncp = beta.dot(design.gram * beta);
    const double snr = beta.dot(sigma * beta);
    // Raw display: rho2_ml - 2cp T M1 + (c^2 p^2 + 4cp) E[bh'S bh / (bh'X'X bh)^2],
    // with the mixed moment expanded as T M2 + snr M4.
    const double mixed = trace * pd * pd * inv_moment(p + 2, ncp, 2) +
                         snr * pd * pd * inv_moment(p + 4, ncp, 2);
    return trace - 2.0 * c * pd * trace * inv_moment(p, ncp, 1) +
           (c * c + 4.0 * c / pd) * mixed;
}

double relative_oos(double c, const DesignMatrix& design, const MatrixXd& sigma,
                    const VectorXd& beta) {
    return shrink_risk_out(c, design, sigma, beta) / trace_sigma_gram_inv(design, sigma);
}

RiskReport risk_report(double c, const DesignMatrix& design, const MatrixXd& sigma,
                       const VectorXd& beta) {
    RiskReport r;
    const auto ml = ml_risks(design, sigma);
    r.rho1_ml = ml.first;
    r.rho2_ml = ml.second;
    r.ncp = beta.dot(design.gram * beta);
    r.snr = beta.dot(sigma * beta);
    r.rho1_c = shrink_risk_in(c, design.n(), design.p(), r.ncp);
    r.rho2_c = shrink_risk_out(c, design, sigma, beta);
    r.rel_oos = r.rho2_c / r.rho2_ml;
    return r;
}

}  // namespace shrinkrisk
