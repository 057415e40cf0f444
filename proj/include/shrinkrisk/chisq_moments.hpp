#pragma once

#include <cstdint>

namespace shrinkrisk {

// Query for E[(1/chi^2_k(lambda))^order], order in {1, 2}.
// Finiteness requires k >= 3 for order 1 and k >= 5 for order 2.
struct InvMomentQuery {
    int k = 0;
    double lambda = 0.0;
    int order = 1;
    double tol = 1e-12;  // relative truncation tolerance, in (0, 1e-6]
};

// Inverse moment of a noncentral chi-square, evaluated by the Poisson
// mixture series
//   sum_{j>=0} Pois(j; lambda/2) * prod_{i=1..order} 1/(k + 2j - 2i),
// summed outward from the Poisson mode so large lambda does not underflow.
double inv_moment(const InvMomentQuery& query);
double inv_moment(int k, double lambda, int order, double tol = 1e-12);

// (k + lambda)^order * inv_moment(k, lambda, order); tends to 1 as
// k + lambda grows.
double moment_ratio(int k, double lambda, int order);

}  // namespace shrinkrisk
