#pragma once

#include <memory>

#include "irlsunwrap/grid_operators.hpp"

namespace irlsunwrap {

/// How the 1-D Neumann eigenbases are obtained.
enum class SpectralBasis {
    Numeric,   // symmetric eigensolver on the explicit second-difference stencil
    Analytic,  // closed-form cosine basis
};

/// Eigendecompositions S^T S = P_S diag(lambda_s) P_S^T and
/// T T^T = P_T diag(lambda_t) P_T^T, eigenvalues ascending with the
/// constant mode first and pinned to exactly zero.
struct SpectralCache {
    Eigen::VectorXd lambda_s;
    Eigen::VectorXd lambda_t;
    Eigen::MatrixXd basis_s;
    Eigen::MatrixXd basis_t;
};

SpectralCache build_spectral_cache(Eigen::Index n, Eigen::Index m,
                                   SpectralBasis method = SpectralBasis::Numeric);

/// Solves S^T S Z + Z T T^T = tau (R - mean(R)) for the mean-zero Z.
Grid sylvester_solve(const Grid& r, double tau, const SpectralCache& cache);

/// Block-diagonal preconditioner: the Laplacian block (1/tau) L solved
/// spectrally and the diagonal slack blocks D + I/tau.
class BlockPreconditioner {
public:
    BlockPreconditioner(std::shared_ptr<const SpectralCache> cache, const DiagonalWeights& d,
                        double tau);

    SystemVector apply(const SystemVector& r) const;

    const SpectralCache& cache() const noexcept { return *cache_; }
    const Grid& diag_v() const noexcept { return diag_v_; }
    const Grid& diag_h() const noexcept { return diag_h_; }
    double tau() const noexcept { return tau_; }

private:
    std::shared_ptr<const SpectralCache> cache_;
    Grid diag_v_;  // D^v + 1/tau
    Grid diag_h_;  // D^h + 1/tau
    double tau_;
};

SystemVector apply_preconditioner(const SystemVector& r, const BlockPreconditioner& pc);

/// Dense block-diagonal preconditioner matrix (same vec convention and size
/// guard as materialize_dense_system).
Eigen::MatrixXd materialize_dense_preconditioner(Eigen::Index rows, Eigen::Index cols,
                                                 const DiagonalWeights& d, double tau);

}  // namespace irlsunwrap
