#include "irlsunwrap/grid_operators.hpp"

#include <cmath>

namespace irlsunwrap {

namespace {

Eigen::Index nonneg(Eigen::Index k) { return k < 0 ? 0 : k; }

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// Column-major vec of a row-major grid.
Eigen::VectorXd vec(const Grid& g) {
    Eigen::VectorXd out(g.size());
    Eigen::Map<Eigen::MatrixXd>(out.data(), g.rows(), g.cols()) = g;
    return out;
}

bool grid_finite(const Grid& g) { return g.size() == 0 || g.allFinite(); }

}  // namespace

SystemVector SystemVector::zeros(Eigen::Index rows, Eigen::Index cols) {
    return {Grid::Zero(rows, cols), Grid::Zero(nonneg(rows - 1), cols),
            Grid::Zero(rows, nonneg(cols - 1))};
}

bool SystemVector::all_finite() const {
    return grid_finite(u) && grid_finite(vv) && grid_finite(vh);
}

SystemVector& SystemVector::operator+=(const SystemVector& o) {
    u += o.u;
    vv += o.vv;
    vh += o.vh;
    return *this;
}

SystemVector& SystemVector::operator-=(const SystemVector& o) {
    u -= o.u;
    vv -= o.vv;
    vh -= o.vh;
    return *this;
}

SystemVector& SystemVector::operator*=(double s) {
    u *= s;
    vv *= s;
    vh *= s;
    return *this;
}

SystemVector operator+(SystemVector a, const SystemVector& b) { return a += b; }
SystemVector operator-(SystemVector a, const SystemVector& b) { return a -= b; }
SystemVector operator*(double s, SystemVector a) { return a *= s; }

double inner(const SystemVector& a, const SystemVector& b) {
    return a.u.cwiseProduct(b.u).sum() + a.vv.cwiseProduct(b.vv).sum() +
           a.vh.cwiseProduct(b.vh).sum();
}

double norm(const SystemVector& a) { return std::sqrt(inner(a, a)); }

void axpy(double a, const SystemVector& x, SystemVector& y) {
    y.u.noalias() += a * x.u;
    y.vv.noalias() += a * x.vv;
    y.vh.noalias() += a * x.vh;
}

void xpby(const SystemVector& x, double b, SystemVector& y) {
    y.u = x.u + b * y.u;
    y.vv = x.vv + b * y.vv;
    y.vh = x.vh + b * y.vh;
}

Grid apply_s(const Grid& u) {
    const auto n = u.rows();
    if (n < 2) {
        return Grid::Zero(0, u.cols());
    }
    return u.bottomRows(n - 1) - u.topRows(n - 1);
}

Grid apply_s_transpose(const Grid& v) {
    const auto n = v.rows() + 1;
    Grid out = Grid::Zero(n, v.cols());
    if (v.rows() > 0) {
        out.topRows(n - 1) -= v;
        out.bottomRows(n - 1) += v;
    }
    return out;
}

Grid apply_t(const Grid& u) {
    const auto m = u.cols();
    if (m < 2) {
        return Grid::Zero(u.rows(), 0);
    }
    return u.rightCols(m - 1) - u.leftCols(m - 1);
}

Grid apply_t_transpose(const Grid& v) {
    const auto m = v.cols() + 1;
    Grid out = Grid::Zero(v.rows(), m);
    if (v.cols() > 0) {
        out.leftCols(m - 1) -= v;
        out.rightCols(m - 1) += v;
    }
    return out;
}

Grid apply_laplacian(const Grid& u) {
    return apply_s_transpose(apply_s(u)) + apply_t_transpose(apply_t(u));
}

SystemVector apply_system(const SystemVector& x, const DiagonalWeights& d, double tau) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("apply_system: tau must be positive");
    }
    const double inv_tau = 1.0 / tau;
    const Grid su = apply_s(x.u);
    const Grid ut = apply_t(x.u);

    SystemVector out;
    out.u = inv_tau * (apply_s_transpose(su - x.vv) + apply_t_transpose(ut - x.vh));
    out.vv = d.dv.cwiseProduct(x.vv) + inv_tau * (x.vv - su);
    out.vh = d.dh.cwiseProduct(x.vh) + inv_tau * (x.vh - ut);
    return out;
}

SystemVector build_rhs(const GradientField& g, double tau) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("build_rhs: tau must be positive");
    }
    const double inv_tau = 1.0 / tau;
    SystemVector b;
    b.u = inv_tau * (apply_s_transpose(g.gv) + apply_t_transpose(g.gh));
    b.vv = -inv_tau * g.gv;
    b.vh = -inv_tau * g.gh;
    return b;
}

Eigen::Index system_dimension(Eigen::Index rows, Eigen::Index cols) {
    return rows * cols + nonneg(rows - 1) * cols + rows * nonneg(cols - 1);
}

Eigen::VectorXd to_dense(const SystemVector& x) {
    Eigen::VectorXd out(x.size());
    out << vec(x.u), vec(x.vv), vec(x.vh);
    return out;
}

SystemVector from_dense(const Eigen::VectorXd& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != system_dimension(rows, cols)) {
        throw DimensionMismatch("from_dense: vector length does not match grid size");
    }
    SystemVector x = SystemVector::zeros(rows, cols);
    Eigen::Index offset = 0;
    for (Grid* g : {&x.u, &x.vv, &x.vh}) {
        *g = Eigen::Map<const Eigen::MatrixXd>(v.data() + offset, g->rows(), g->cols());
        offset += g->size();
    }
    return x;
}

Eigen::MatrixXd dense_s(Eigen::Index n) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(nonneg(n - 1), n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        s(i, i) = -1.0;
        s(i, i + 1) = 1.0;
    }
    return s;
}

Eigen::MatrixXd dense_t(Eigen::Index m) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, nonneg(m - 1));
    for (Eigen::Index j = 0; j + 1 < m; ++j) {
        t(j, j) = -1.0;
        t(j + 1, j) = 1.0;
    }
    return t;
}

Eigen::MatrixXd materialize_dense_system(Eigen::Index rows, Eigen::Index cols,
                                         const DiagonalWeights& d, double tau) {
    if (rows * cols > 4096) {
        throw ResourceLimit("materialize_dense_system: N*M exceeds 4096");
    }
    if (!(tau > 0.0)) {
        throw std::invalid_argument("materialize_dense_system: tau must be positive");
    }
    const auto n = rows;
    const auto m = cols;
    const Eigen::MatrixXd s = dense_s(n);
    const Eigen::MatrixXd t = dense_t(m);
    const Eigen::MatrixXd in = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd im = Eigen::MatrixXd::Identity(m, m);

    const Eigen::Index nu = n * m;
    const Eigen::Index nv = nonneg(n - 1) * m;
    const Eigen::Index nh = n * nonneg(m - 1);
    const double inv_tau = 1.0 / tau;

    const Eigen::MatrixXd ims = kron(im, s);                 // vec(S U)
    const Eigen::MatrixXd tti = kron(t.transpose(), in);     // vec(U T)

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nu + nv + nh, nu + nv + nh);
    a.topLeftCorner(nu, nu) = inv_tau * (kron(im, s.transpose() * s) + kron(t * t.transpose(), in));
    a.block(0, nu, nu, nv) = -inv_tau * ims.transpose();
    a.block(0, nu + nv, nu, nh) = -inv_tau * tti.transpose();
    a.block(nu, 0, nv, nu) = -inv_tau * ims;
    a.block(nu + nv, 0, nh, nu) = -inv_tau * tti;

    Eigen::VectorXd diag_v = vec(d.dv).array() + inv_tau;
    Eigen::VectorXd diag_h = vec(d.dh).array() + inv_tau;
    a.block(nu, nu, nv, nv) = diag_v.asDiagonal();
    a.block(nu + nv, nu + nv, nh, nh) = diag_h.asDiagonal();
    return a;
}

}  // namespace irlsunwrap
