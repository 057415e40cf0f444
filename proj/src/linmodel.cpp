#include "shrinkrisk/linmodel.hpp"

#include <cmath>
#include <random>

#include "shrinkrisk/rng.hpp"

namespace shrinkrisk {

double fourth_moment(EntryLaw law) {
    switch (law) {
        case EntryLaw::standard_normal: return 3.0;
        case EntryLaw::rademacher: return 1.0;
        case EntryLaw::centered_uniform_scaled: return 9.0 / 5.0;
    }
    throw std::invalid_argument("fourth_moment: unknown entry law");
}

void check_covariance(const MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols() || sigma.rows() < 1) {
        throw std::invalid_argument("covariance must be square and non-empty");
    }
    const double scale = sigma.cwiseAbs().maxCoeff();
    if (!((sigma - sigma.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale)) {
        throw std::invalid_argument("covariance is not symmetric within 1e-12 relative");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(sigma, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 1e-10 * hi)) {
        throw std::invalid_argument("covariance is not positive definite (min/max eigenvalue " +
                                    std::to_string(lo / hi) + ")");
    }
}

void ModelSpec::validate() const {
    if (!(n >= p && p >= 3)) {
        throw std::invalid_argument("ModelSpec: need n >= p >= 3, got n=" + std::to_string(n) +
                                    ", p=" + std::to_string(p));
    }
    if (sigma_cov.rows() != p || beta.size() != p) {
        throw std::invalid_argument("ModelSpec: sigma_cov/beta dimensions do not match p");
    }
    check_covariance(sigma_cov);
}

DesignMatrix DesignMatrix::from_matrix(MatrixXd x_in) {
    DesignMatrix d;
    d.x = std::move(x_in);
    const int n = d.n();
    const int p = d.p();
    if (n < p || p < 1) {
        throw std::invalid_argument("DesignMatrix: need n >= p >= 1");
    }
    d.gram.noalias() = d.x.transpose() * d.x;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(d.gram / static_cast<double>(n));
    d.spectrum = es.eigenvalues();  // ascending
    d.eigvecs = es.eigenvectors();
    if (!(d.spectrum(0) > 1e-12 * d.spectrum(p - 1))) {
        throw DegenerateDesign("design matrix is numerically rank deficient");
    }
    return d;
}

MatrixXd sym_sqrt(const MatrixXd& sigma) {
    check_covariance(sigma);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(sigma);
    return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
           es.eigenvectors().transpose();
}

MatrixXd sample_entry_matrix(int n, int p, EntryLaw law, std::uint64_t seed) {
    if (n < 1 || p < 1) throw std::invalid_argument("sample_entry_matrix: bad dimensions");
    auto rng = make_rng(seed, 0);
    MatrixXd v(n, p);
    switch (law) {
        case EntryLaw::standard_normal: {
            std::normal_distribution<double> dist;
            for (int j = 0; j < p; ++j)
                for (int i = 0; i < n; ++i) v(i, j) = dist(rng);
            break;
        }
        case EntryLaw::rademacher: {
            std::bernoulli_distribution dist(0.5);
            for (int j = 0; j < p; ++j)
                for (int i = 0; i < n; ++i) v(i, j) = dist(rng) ? 1.0 : -1.0;
            break;
        }
        case EntryLaw::centered_uniform_scaled: {
            const double half = std::sqrt(3.0);
            std::uniform_real_distribution<double> dist(-half, half);
            for (int j = 0; j < p; ++j)
                for (int i = 0; i < n; ++i) v(i, j) = dist(rng);
            break;
        }
    }
    return v;
}

DesignMatrix design_from_v(const MatrixXd& v, const MatrixXd& sigma) {
    if (v.cols() != sigma.rows()) {
        throw std::invalid_argument("design_from_v: V and Sigma dimensions do not match");
    }
    return DesignMatrix::from_matrix(v * sym_sqrt(sigma));
}

DesignMatrix sample_design(int n, int p, const MatrixXd& sigma, EntryLaw law,
                           std::uint64_t seed) {
    if (!(n >= p && p >= 3)) {
        throw std::invalid_argument("sample_design: need n >= p >= 3");
    }
    check_covariance(sigma);
    const MatrixXd root = sym_sqrt(sigma);
    for (int attempt = 0; attempt < 3; ++attempt) {
        const MatrixXd v = sample_entry_matrix(n, p, law, mix64(seed) + attempt);
        try {
            return DesignMatrix::from_matrix(v * root);
        } catch (const DegenerateDesign&) {
            // redraw
        }
    }
    throw DegenerateDesign("sample_design: degenerate Gram matrix after 3 draws");
}

ResponseVector response_from_noise(const ModelSpec& spec, const DesignMatrix& design,
                                   const VectorXd& u) {
    spec.validate();
    if (design.n() != spec.n || design.p() != spec.p || u.size() != spec.n) {
        throw std::invalid_argument("response_from_noise: dimension mismatch");
    }
    return ResponseVector{design.x * spec.beta + u, 0};
}

ResponseVector sample_response(const ModelSpec& spec, const DesignMatrix& design,
                               std::uint64_t seed) {
    spec.validate();
    if (design.n() != spec.n || design.p() != spec.p) {
        throw std::invalid_argument("sample_response: dimension mismatch");
    }
    auto rng = make_rng(seed, 1);
    std::normal_distribution<double> dist;
    VectorXd u(spec.n);
    for (int i = 0; i < spec.n; ++i) u(i) = dist(rng);
    ResponseVector r = response_from_noise(spec, design, u);
    r.seed = seed;
    return r;
}

VectorXd beta_along_eigvec(const DesignMatrix& design, const MatrixXd& sigma,
                           int index, double target) {
    const int p = design.p();
    if (index < 1 || index > p) {
        throw std::invalid_argument("beta_along_eigvec: index out of range");
    }
    if (!(target >= 0.0)) {
        throw std::invalid_argument("beta_along_eigvec: target must be >= 0");
    }
    const VectorXd w = design.eigvecs.col(index - 1);
    const double q = w.dot(sigma * w);
    if (!(q > 0.0)) {
        throw std::invalid_argument("beta_along_eigvec: w'Sigma w is not positive");
    }
    return std::sqrt(target / q) * w;
}

}  // namespace shrinkrisk
