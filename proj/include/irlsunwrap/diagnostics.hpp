#pragma once

#include <cstdint>
#include <vector>

#include "irlsunwrap/grid_operators.hpp"

namespace irlsunwrap {

/// Spectra of the system matrix A and of C* A C*, where C* is the inverse
/// square root of the block preconditioner on its range.
struct ConditioningReport {
    Eigen::Index n = 0;
    Eigen::Index m = 0;
    std::vector<double> eig_a;    // strictly positive, ascending
    std::vector<double> eig_pre;  // strictly positive, ascending
    int zero_modes_a = 0;
    int zero_modes_pre = 0;
    double kappa_a = 0.0;
    double kappa_pre = 0.0;
    double rho_a = 0.0;
    double rho_pre = 0.0;
};

/// (sqrt(kappa) - 1) / (sqrt(kappa) + 1)
double cg_rate(double kappa);

/// Relative threshold below which an eigenvalue counts as zero.
inline constexpr double kNullspaceThreshold = 1e-10;

/// Positive eigenvalues (ascending) of a symmetric matrix; eigenvalues at or
/// below kNullspaceThreshold * lambda_max are counted in `zero_modes`.
std::vector<double> positive_spectrum(const Eigen::MatrixXd& sym, int* zero_modes = nullptr);

/// C and C* built from the eigendecomposition of a PSD matrix with one
/// zero mode dropped: C = sum sqrt(g_i) d_i d_i^T, C* = sum g_i^{-1/2} d_i d_i^T.
struct RootPair {
    Eigen::MatrixXd root;
    Eigen::MatrixXd inv_root;
};
RootPair range_square_roots(const Eigen::MatrixXd& psd);

/// D^v, D^h uniform in (0, 1/delta] drawn from the seeded stream.
DiagonalWeights random_diagonal(Eigen::Index n, Eigen::Index m, double delta, std::uint64_t seed);

/// Dense spectral study for an n x m grid; n*m must not exceed 1024.
ConditioningReport conditioning_report(Eigen::Index n, Eigen::Index m, double delta, double tau,
                                       std::uint64_t seed);

/// Same study for caller-supplied diagonal weights.
ConditioningReport conditioning_report(Eigen::Index n, Eigen::Index m, const DiagonalWeights& d,
                                       double tau);

}  // namespace irlsunwrap
