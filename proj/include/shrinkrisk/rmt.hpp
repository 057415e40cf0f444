#pragma once

#include <Eigen/Dense>
#include <optional>

namespace shrinkrisk {

// Marchenko-Pastur law for aspect ratio t in (0, 1): support edges
// a = (1-sqrt(t))^2 and b = (1+sqrt(t))^2.
struct MPLaw {
    double t = 0.0;
    double a = 0.0;
    double b = 0.0;

    explicit MPLaw(double t_in);
};

// MP density sqrt((x-a)(b-x)) / (2 pi t x); zero outside [a, b].
double mp_density(double x, double t);

// CDF of the MP law via a tabulated integral of the density (the table is
// built with the edge-singularity-removing substitution x = a + (b-a)sin^2).
class MPCdf {
  public:
    explicit MPCdf(double t, int table_points = 10000);
    double operator()(double x) const;

  private:
    MPLaw law_;
    Eigen::VectorXd xs_;
    Eigen::VectorXd cdf_;
};

struct LemmaB1Result {
    double closed = 0.0;                 // 2 pi min{1,t} / |1-t|, inf at t = 1
    std::optional<double> quadrature;    // absent at t = 1
};

// Integral identity: int_a^b x^{-2} sqrt((b-x)(x-a)) dx against its closed
// form; the quadrature uses the same sin^2 substitution, tolerance 1e-9.
LemmaB1Result lemma_b1(double t);

struct SpectrumReport {
    double inv_sum = 0.0;       // sum 1/lambda_i (inf if any eigenvalue is 0)
    double max_over_n = 0.0;    // lambda_1 / n
    double min_over_n = 0.0;    // lambda_p / n
    double target_max = 0.0;    // (1+sqrt(t))^2 at t = p/n
    double target_min = 0.0;    // (1-sqrt(t))^2
    double inv_sum_target = 0.0;  // t/(1-t)
    double ks_distance = 0.0;   // empirical spectral CDF of lambda_i/n vs MP CDF
};

// Diagnostics of a V'V spectrum against the Marchenko-Pastur limits.
SpectrumReport spectrum_diagnostics(const Eigen::VectorXd& v_spectrum, int n, int p);

// First moment of the MP density by quadrature (equals 1); exposed for tests.
double mp_mean_quadrature(double t);

// Normalization integral of the MP density by quadrature (equals 1).
double mp_mass_quadrature(double t);

}  // namespace shrinkrisk
