#pragma once

#include <cstdint>
#include <utility>

#include "shrinkrisk/linmodel.hpp"

namespace shrinkrisk {

struct McEstimate {
    double mean = 0.0;
    double se = 0.0;
    long reps = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo estimate of (rho1, rho2) for the shrinkage estimator with
// tuning c, conditional on the given design: each replication draws u,
// forms beta_hat(c) and accumulates the two quadratic-form errors.
std::pair<McEstimate, McEstimate> mc_risk(double c, const DesignMatrix& design,
                                          const MatrixXd& sigma, const VectorXd& beta,
                                          long reps, std::uint64_t seed);

// Monte Carlo estimate of E[(1/chi^2_k(lambda))^order]. The noncentral
// chi-square is sampled as a central chi^2_{k-1} plus (Z + sqrt(lambda))^2,
// which puts the whole noncentrality on one coordinate.
McEstimate mc_inv_moment(int k, double lambda, int order, long reps, std::uint64_t seed);

struct UnconditionalResult {
    McEstimate js;   // design-averaged rho2 of beta_hat(c)
    McEstimate ml;   // design-averaged rho2 of beta_hat_ML
    int skipped = 0; // degenerate design draws
};

// Averages the exact conditional rho2 over Gaussian design draws (Eq. over
// X); the inner risk per design is closed-form, so reps_noise is accepted
// for interface compatibility but unused.
UnconditionalResult mc_unconditional(double c, int n, int p, const MatrixXd& sigma,
                                     const VectorXd& beta, int reps_design, int reps_noise,
                                     std::uint64_t seed);

struct QuadFormResult {
    McEstimate estimate;
    double variance = 0.0;  // empirical variance of w'V'Vw/n across draws
};

// Samples w'V'Vw/n over independent design draws for a unit vector w.
QuadFormResult mc_quadratic_form(const VectorXd& w, int n, EntryLaw law, long reps,
                                 std::uint64_t seed);

}  // namespace shrinkrisk
