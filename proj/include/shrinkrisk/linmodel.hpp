#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace shrinkrisk {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Thrown when X'X is (numerically) rank deficient after the allowed redraws.
struct DegenerateDesign : std::runtime_error {
    explicit DegenerateDesign(const std::string& msg) : std::runtime_error(msg) {}
};

// Entry laws for the V factor of X = V Sigma^{1/2}. All have mean zero,
// variance one and finite fourth moment.
enum class EntryLaw { standard_normal, rademacher, centered_uniform_scaled };

// E[V_11^4] for each entry law (3 for normal, 1 for rademacher, 9/5 uniform).
double fourth_moment(EntryLaw law);

struct ModelSpec {
    int n = 0;
    int p = 0;
    MatrixXd sigma_cov;  // p x p, symmetric positive definite
    VectorXd beta;       // p-vector

    // Checks n >= p >= 3, symmetry of sigma_cov (1e-12 relative) and
    // positive definiteness (min eigenvalue > 1e-10 * max).
    void validate() const;
};

struct DesignMatrix {
    MatrixXd x;        // n x p
    MatrixXd gram;     // X'X
    VectorXd spectrum; // eigenvalues of X'X/n, ascending
    MatrixXd eigvecs;  // orthonormal eigenvectors, column i for spectrum[i]

    int n() const { return static_cast<int>(x.rows()); }
    int p() const { return static_cast<int>(x.cols()); }

    // Builds the Gram matrix and its spectrum; throws DegenerateDesign if
    // the smallest eigenvalue is below 1e-12 times the largest.
    static DesignMatrix from_matrix(MatrixXd x_in);
};

struct ResponseVector {
    VectorXd y;
    std::uint64_t seed = 0;
};

// Symmetric square root of an SPD matrix via eigendecomposition.
MatrixXd sym_sqrt(const MatrixXd& sigma);

// Checks symmetry/SPD of a covariance candidate; throws std::invalid_argument.
void check_covariance(const MatrixXd& sigma);

// i.i.d. n x p matrix from the given entry law; deterministic given seed.
MatrixXd sample_entry_matrix(int n, int p, EntryLaw law, std::uint64_t seed);

// X = V Sigma^{1/2} for a caller-supplied V (test hook and shared-V studies).
DesignMatrix design_from_v(const MatrixXd& v, const MatrixXd& sigma);

// Draws V from the entry law and forms X = V Sigma^{1/2}. Degenerate Gram
// matrices are redrawn up to 3 times, then DegenerateDesign is thrown.
DesignMatrix sample_design(int n, int p, const MatrixXd& sigma, EntryLaw law,
                           std::uint64_t seed);

// Y = X beta + u for a caller-supplied noise vector (test hook).
ResponseVector response_from_noise(const ModelSpec& spec, const DesignMatrix& design,
                                   const VectorXd& u);

// Y = X beta + u with u ~ N(0, I_n); deterministic given seed.
ResponseVector sample_response(const ModelSpec& spec, const DesignMatrix& design,
                               std::uint64_t seed);

// beta = s * w_i (1-based index into the ascending spectrum) with s >= 0
// chosen so that beta' Sigma beta equals target exactly.
VectorXd beta_along_eigvec(const DesignMatrix& design, const MatrixXd& sigma,
                           int index, double target);

}  // namespace shrinkrisk
