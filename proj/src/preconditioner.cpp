#include "irlsunwrap/preconditioner.hpp"

#include <cmath>
#include <stdexcept>

namespace irlsunwrap {

namespace {

// 1-D second difference with Neumann ends: tridiag(-1, 2, -1) with 1 in both corners.
Eigen::MatrixXd neumann_stencil(Eigen::Index n) {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        l(i, i) += 1.0;
        l(i + 1, i + 1) += 1.0;
        l(i, i + 1) = -1.0;
        l(i + 1, i) = -1.0;
    }
    return l;
}

void numeric_basis(Eigen::Index n, Eigen::VectorXd& lambda, Eigen::MatrixXd& basis) {
    if (n == 1) {
        lambda = Eigen::VectorXd::Zero(1);
        basis = Eigen::MatrixXd::Ones(1, 1);
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(neumann_stencil(n));
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("build_spectral_cache: eigensolver failed");
    }
    lambda = eig.eigenvalues();
    basis = eig.eigenvectors();
    // The kernel is spanned by the constant vector; pin it exactly.
    lambda(0) = 0.0;
    basis.col(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
}

void analytic_basis(Eigen::Index n, Eigen::VectorXd& lambda, Eigen::MatrixXd& basis) {
    const double nd = static_cast<double>(n);
    lambda.resize(n);
    basis.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double s = std::sin(kPi * static_cast<double>(k) / (2.0 * nd));
        lambda(k) = 4.0 * s * s;
        const double scale = k == 0 ? std::sqrt(1.0 / nd) : std::sqrt(2.0 / nd);
        for (Eigen::Index i = 0; i < n; ++i) {
            basis(i, k) = scale * std::cos(kPi * static_cast<double>(k) *
                                           (static_cast<double>(i) + 0.5) / nd);
        }
    }
}

}  // namespace

SpectralCache build_spectral_cache(Eigen::Index n, Eigen::Index m, SpectralBasis method) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("build_spectral_cache: sizes must be positive");
    }
    SpectralCache cache;
    auto build = method == SpectralBasis::Numeric ? numeric_basis : analytic_basis;
    build(n, cache.lambda_s, cache.basis_s);
    build(m, cache.lambda_t, cache.basis_t);
    return cache;
}

Grid sylvester_solve(const Grid& r, double tau, const SpectralCache& cache) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("sylvester_solve: tau must be positive");
    }
    if (r.rows() != cache.basis_s.rows() || r.cols() != cache.basis_t.rows()) {
        throw DimensionMismatch("sylvester_solve: right-hand side does not match cache");
    }
    const Grid centered = r.array() - r.mean();
    Eigen::MatrixXd coeff = cache.basis_s.transpose() * centered * cache.basis_t;
    for (Eigen::Index j = 0; j < coeff.cols(); ++j) {
        for (Eigen::Index i = 0; i < coeff.rows(); ++i) {
            const double denom = cache.lambda_s(i) + cache.lambda_t(j);
            coeff(i, j) = denom > 0.0 ? tau * coeff(i, j) / denom : 0.0;
        }
    }
    Grid z = cache.basis_s * coeff * cache.basis_t.transpose();
    return z;
}

BlockPreconditioner::BlockPreconditioner(std::shared_ptr<const SpectralCache> cache,
                                         const DiagonalWeights& d, double tau)
    : cache_(std::move(cache)), tau_(tau) {
    if (!cache_) {
        throw std::invalid_argument("BlockPreconditioner: null spectral cache");
    }
    if (!(tau > 0.0)) {
        throw std::invalid_argument("BlockPreconditioner: tau must be positive");
    }
    diag_v_ = d.dv.array() + 1.0 / tau;
    diag_h_ = d.dh.array() + 1.0 / tau;
}

SystemVector BlockPreconditioner::apply(const SystemVector& r) const {
    SystemVector z;
    z.u = sylvester_solve(r.u, tau_, *cache_);
    z.vv = r.vv.cwiseQuotient(diag_v_);
    z.vh = r.vh.cwiseQuotient(diag_h_);
    return z;
}

SystemVector apply_preconditioner(const SystemVector& r, const BlockPreconditioner& pc) {
    return pc.apply(r);
}

Eigen::MatrixXd materialize_dense_preconditioner(Eigen::Index rows, Eigen::Index cols,
                                                 const DiagonalWeights& d, double tau) {
    Eigen::MatrixXd a = materialize_dense_system(rows, cols, d, tau);
    const Eigen::Index nu = rows * cols;
    const Eigen::Index rest = a.rows() - nu;
    a.block(0, nu, nu, rest).setZero();
    a.block(nu, 0, rest, nu).setZero();
    return a;
}

}  // namespace irlsunwrap
