#pragma once

// Test-side generators and brute-force oracles. Nothing here calls into the
// library's own dense builders, so the oracles stay independent of the code
// under test.

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "irlsunwrap/grid_operators.hpp"
#include "irlsunwrap/objective.hpp"
#include "irlsunwrap/phase.hpp"

namespace testsupport {

using irlsunwrap::DiagonalWeights;
using irlsunwrap::GradientField;
using irlsunwrap::Grid;
using irlsunwrap::IrlsWeights;
using irlsunwrap::SystemVector;
using irlsunwrap::WeightField;
using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    double normal(double sigma = 1.0) { return std::normal_distribution<double>(0.0, sigma)(eng_); }
    Index size(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(eng_); }

    Grid grid(Index r, Index c, double lo = -1.0, double hi = 1.0) {
        Grid g(r, c);
        for (Index i = 0; i < g.size(); ++i) g.data()[i] = uniform(lo, hi);
        return g;
    }
    SystemVector system_vector(Index n, Index m, double scale = 1.0) {
        return {grid(n, m, -scale, scale), grid(std::max<Index>(n - 1, 0), m, -scale, scale),
                grid(n, std::max<Index>(m - 1, 0), -scale, scale)};
    }
    GradientField gradients(Index n, Index m) {
        return {grid(std::max<Index>(n - 1, 0), m, -M_PI, M_PI),
                grid(n, std::max<Index>(m - 1, 0), -M_PI, M_PI)};
    }
    WeightField weights(Index n, Index m, double lo = 0.1, double hi = 2.0) {
        return {grid(std::max<Index>(n - 1, 0), m, lo, hi), grid(n, std::max<Index>(m - 1, 0), lo, hi)};
    }
    IrlsWeights irls_weights(Index n, Index m, double lo, double hi) {
        return {grid(std::max<Index>(n - 1, 0), m, lo, hi), grid(n, std::max<Index>(m - 1, 0), lo, hi)};
    }
    DiagonalWeights diagonal(Index n, Index m, double lo, double hi) {
        return {grid(std::max<Index>(n - 1, 0), m, lo, hi), grid(n, std::max<Index>(m - 1, 0), lo, hi)};
    }

private:
    std::mt19937_64 eng_;
};

inline double dot(const Grid& a, const Grid& b) { return (a.array() * b.array()).sum(); }

// Column-stacking vec of a grid.
inline VectorXd vec(const Grid& g) {
    VectorXd v(g.size());
    Index k = 0;
    for (Index j = 0; j < g.cols(); ++j)
        for (Index i = 0; i < g.rows(); ++i) v(k++) = g(i, j);
    return v;
}

inline Grid unvec(const VectorXd& v, Index r, Index c) {
    Grid g(r, c);
    Index k = 0;
    for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i) g(i, j) = v(k++);
    return g;
}

inline VectorXd stack(const SystemVector& x) {
    VectorXd out(x.size());
    out << vec(x.u), vec(x.vv), vec(x.vh);
    return out;
}

inline SystemVector unstack(const VectorXd& v, Index n, Index m) {
    const Index nu = n * m;
    const Index nv = std::max<Index>(n - 1, 0) * m;
    const Index nh = n * std::max<Index>(m - 1, 0);
    return {unvec(v.segment(0, nu), n, m), unvec(v.segment(nu, nv), std::max<Index>(n - 1, 0), m),
            unvec(v.segment(nu + nv, nh), n, std::max<Index>(m - 1, 0))};
}

// Forward-difference matrix: row i has -1 at column i and +1 at column i+1.
inline MatrixXd forward_difference(Index n) {
    MatrixXd s = MatrixXd::Zero(std::max<Index>(n - 1, 0), n);
    for (Index i = 0; i + 1 < n; ++i) {
        s(i, i) = -1.0;
        s(i, i + 1) = 1.0;
    }
    return s;
}

inline MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
    MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Dense operators acting on column-stacked vecs:
// vec(S U) = (I_M (x) S) vec(U) and vec(U T) = (T^T (x) I_N) vec(U), with
// T = forward_difference(M)^T.
inline MatrixXd vec_s(Index n, Index m) { return kron(MatrixXd::Identity(m, m), forward_difference(n)); }
inline MatrixXd vec_t(Index n, Index m) { return kron(forward_difference(m), MatrixXd::Identity(n, n)); }

// Dense system matrix assembled from the normal equations of the quadratic
// (1/2tau)||S U - V^v - G^v||^2 + (1/2tau)||U T - V^h - G^h||^2
// + (1/2) sum D^v (V^v)^2 + (1/2) sum D^h (V^h)^2.
inline MatrixXd dense_system(Index n, Index m, const DiagonalWeights& d, double tau) {
    const MatrixXd s = vec_s(n, m);
    const MatrixXd t = vec_t(n, m);
    const Index nu = n * m, nv = s.rows(), nh = t.rows();
    // Residual map x -> (S u - vv, T u - vh).
    MatrixXd r = MatrixXd::Zero(nv + nh, nu + nv + nh);
    r.block(0, 0, nv, nu) = s;
    r.block(0, nu, nv, nv) = -MatrixXd::Identity(nv, nv);
    r.block(nv, 0, nh, nu) = t;
    r.block(nv, nu + nv, nh, nh) = -MatrixXd::Identity(nh, nh);
    MatrixXd a = r.transpose() * r / tau;
    VectorXd diag(nv + nh);
    diag << vec(d.dv), vec(d.dh);
    a.bottomRightCorner(nv + nh, nv + nh).diagonal() += diag;
    return a;
}

inline VectorXd dense_rhs(const GradientField& g, Index n, Index m, double tau) {
    const MatrixXd s = vec_s(n, m);
    const MatrixXd t = vec_t(n, m);
    const Index nv = s.rows(), nh = t.rows();
    MatrixXd r = MatrixXd::Zero(nv + nh, n * m + nv + nh);
    r.block(0, 0, nv, n * m) = s;
    r.block(0, n * m, nv, nv) = -MatrixXd::Identity(nv, nv);
    r.block(nv, 0, nh, n * m) = t;
    r.block(nv, n * m + nv, nh, nh) = -MatrixXd::Identity(nh, nh);
    VectorXd gg(nv + nh);
    gg << vec(g.gv), vec(g.gh);
    return r.transpose() * gg / tau;
}

inline MatrixXd pinv_sym(const MatrixXd& a, double rel = 1e-10) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
    const VectorXd ev = es.eigenvalues();
    const double cut = rel * ev.cwiseAbs().maxCoeff();
    VectorXd inv(ev.size());
    for (Index i = 0; i < ev.size(); ++i) inv(i) = std::abs(ev(i)) > cut ? 1.0 / ev(i) : 0.0;
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

// Scalar-loop objective evaluation for oracle comparisons.
inline double loop_f(const SystemVector& x, const GradientField& g, const WeightField& c, double tau,
                     double delta, bool smooth) {
    const Index n = x.u.rows(), m = x.u.cols();
    double l1 = 0.0, pen = 0.0;
    for (Index i = 0; i + 1 < n; ++i)
        for (Index j = 0; j < m; ++j) {
            const double cv = c.cv(i, j) * x.vv(i, j);
            l1 += smooth ? std::sqrt(cv * cv + delta * delta) : std::abs(cv);
            const double r = x.u(i + 1, j) - x.u(i, j) - g.gv(i, j) - x.vv(i, j);
            pen += r * r;
        }
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j + 1 < m; ++j) {
            const double ch = c.ch(i, j) * x.vh(i, j);
            l1 += smooth ? std::sqrt(ch * ch + delta * delta) : std::abs(ch);
            const double r = x.u(i, j + 1) - x.u(i, j) - g.gh(i, j) - x.vh(i, j);
            pen += r * r;
        }
    return l1 + pen / (2.0 * tau);
}

inline Index arc_count(Index n, Index m) { return (n - 1) * m + n * (m - 1); }

}  // namespace testsupport
