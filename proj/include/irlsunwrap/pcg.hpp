#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "irlsunwrap/grid_operators.hpp"

namespace irlsunwrap {

/// Raised when CG produces a non-finite scalar or iterate.
class NumericalBreakdown : public std::runtime_error {
public:
    NumericalBreakdown(const std::string& what, int iteration)
        : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

// Vector-space hooks for dense vectors, mirroring the SystemVector overloads.
inline double inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.dot(b); }
inline void axpy(double a, const Eigen::VectorXd& x, Eigen::VectorXd& y) { y.noalias() += a * x; }
inline void xpby(const Eigen::VectorXd& x, double b, Eigen::VectorXd& y) { y = x + b * y; }
inline bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }
inline bool all_finite(const SystemVector& v) { return v.all_finite(); }

template <typename Vector>
struct PcgOptions {
    int max_iters = 100;
    double rel_tol = 1e-10;
    /// Every `reproject_every` iterations the residual is passed through
    /// `project` (when set) to strip drift into the operator's nullspace.
    int reproject_every = 50;
    std::function<void(Vector&)> project;
    /// Called with (l, x_l) for every iterate including x_0.
    std::function<void(int, const Vector&)> observer;
};

template <typename Vector>
struct PcgOutcome {
    Vector x;
    int iterations = 0;
    std::vector<double> residual_norms;
    bool converged = false;
};

/// Preconditioned conjugate gradient on A x = b.
///
/// A and M must be symmetric positive semidefinite with a shared nullspace
/// and b must lie in the range of A. Stops when ||r_l|| <= rel_tol ||b|| or
/// after max_iters steps.
template <typename Vector, typename ApplyA, typename ApplyM>
PcgOutcome<Vector> pcg_solve(const ApplyA& apply_a, const ApplyM& apply_m, const Vector& b,
                             const Vector& x0, const PcgOptions<Vector>& opts = {}) {
    if (opts.max_iters < 0 || opts.rel_tol < 0.0) {
        throw std::invalid_argument("pcg_solve: negative iteration budget or tolerance");
    }
    PcgOutcome<Vector> out;
    out.x = x0;

    Vector r = b;
    axpy(-1.0, apply_a(out.x), r);
    Vector z = apply_m(r);
    Vector p = z;
    double rho = inner(r, z);

    const double target = opts.rel_tol * std::sqrt(inner(b, b));
    double rnorm = std::sqrt(inner(r, r));
    out.residual_norms.push_back(rnorm);
    if (opts.observer) opts.observer(0, out.x);

    int l = 0;
    while (true) {
        if (!std::isfinite(rnorm) || !std::isfinite(rho)) {
            throw NumericalBreakdown("pcg_solve: non-finite residual", l);
        }
        if (rnorm <= target) {
            out.converged = true;
            break;
        }
        if (l == opts.max_iters) {
            break;
        }
        const Vector ap = apply_a(p);
        const double curvature = inner(p, ap);
        if (!std::isfinite(curvature)) {
            throw NumericalBreakdown("pcg_solve: non-finite curvature", l);
        }
        if (curvature <= 1e-300) {
            // Degenerate direction; nothing more to gain.
            out.converged = rnorm <= target;
            break;
        }
        const double alpha = rho / curvature;
        axpy(alpha, p, out.x);
        axpy(-alpha, ap, r);
        ++l;
        if (opts.project && opts.reproject_every > 0 && l % opts.reproject_every == 0) {
            opts.project(r);
        }
        z = apply_m(r);
        const double rho_next = inner(r, z);
        const double beta = rho_next / rho;
        rho = rho_next;
        xpby(z, beta, p);

        rnorm = std::sqrt(inner(r, r));
        out.residual_norms.push_back(rnorm);
        if (!std::isfinite(alpha) || !all_finite(out.x)) {
            throw NumericalBreakdown("pcg_solve: non-finite iterate", l);
        }
        if (opts.observer) opts.observer(l, out.x);
    }
    out.iterations = l;
    return out;
}

}  // namespace irlsunwrap
