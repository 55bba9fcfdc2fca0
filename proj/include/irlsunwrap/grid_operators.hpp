#pragma once

#include <stdexcept>

#include "irlsunwrap/phase.hpp"

namespace irlsunwrap {

/// Thrown when a dense oracle would exceed its size guard.
class ResourceLimit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The unknown (U, V^v, V^h) of the inner linear system, kept in grid form.
/// Also used for right-hand sides and residuals, which share the shape.
struct SystemVector {
    Grid u;   // N x M
    Grid vv;  // (N-1) x M
    Grid vh;  // N x (M-1)

    static SystemVector zeros(Eigen::Index rows, Eigen::Index cols);

    Eigen::Index rows() const noexcept { return u.rows(); }
    Eigen::Index cols() const noexcept { return u.cols(); }
    Eigen::Index size() const noexcept { return u.size() + vv.size() + vh.size(); }

    bool all_finite() const;

    SystemVector& operator+=(const SystemVector& o);
    SystemVector& operator-=(const SystemVector& o);
    SystemVector& operator*=(double s);
};

SystemVector operator+(SystemVector a, const SystemVector& b);
SystemVector operator-(SystemVector a, const SystemVector& b);
SystemVector operator*(double s, SystemVector a);

double inner(const SystemVector& a, const SystemVector& b);
double norm(const SystemVector& a);
/// y += a * x
void axpy(double a, const SystemVector& x, SystemVector& y);
/// y = x + b * y
void xpby(const SystemVector& x, double b, SystemVector& y);

/// Per-arc diagonal entries D^v = C^v (.) C^v / W^v and D^h likewise.
struct DiagonalWeights {
    Grid dv;
    Grid dh;
};

// S U: vertical forward differences, (N-1) x M.
Grid apply_s(const Grid& u);
// S^T V: N x M.
Grid apply_s_transpose(const Grid& v);
// U T: horizontal forward differences, N x (M-1).
Grid apply_t(const Grid& u);
// V T^T: N x M.
Grid apply_t_transpose(const Grid& v);

/// S^T S U + U T T^T (the separable Neumann Laplacian).
Grid apply_laplacian(const Grid& u);

/// Matrix-free product with the IRLS system matrix for weights d and penalty tau.
SystemVector apply_system(const SystemVector& x, const DiagonalWeights& d, double tau);

/// Right-hand side for wrapped gradients g and penalty tau.
SystemVector build_rhs(const GradientField& g, double tau);

// Dense oracles. Vectorization stacks columns of each block in the order
// (u, vv, vh), matching the column-major vec convention.

Eigen::Index system_dimension(Eigen::Index rows, Eigen::Index cols);
Eigen::VectorXd to_dense(const SystemVector& x);
SystemVector from_dense(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols);

/// Dense S of size (N-1) x N and T of size M x (M-1).
Eigen::MatrixXd dense_s(Eigen::Index n);
Eigen::MatrixXd dense_t(Eigen::Index m);

/// Dense system matrix; refuses N*M above 4096.
Eigen::MatrixXd materialize_dense_system(Eigen::Index rows, Eigen::Index cols,
                                         const DiagonalWeights& d, double tau);

}  // namespace irlsunwrap
