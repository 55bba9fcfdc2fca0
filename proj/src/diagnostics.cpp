#include "irlsunwrap/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "irlsunwrap/preconditioner.hpp"
#include "irlsunwrap/synth.hpp"

namespace irlsunwrap {

double cg_rate(double kappa) {
    const double s = std::sqrt(kappa);
    return (s - 1.0) / (s + 1.0);
}

std::vector<double> positive_spectrum(const Eigen::MatrixXd& sym, int* zero_modes) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("positive_spectrum: eigensolver failed");
    }
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double cutoff = kNullspaceThreshold * ev.cwiseAbs().maxCoeff();
    std::vector<double> out;
    int zeros = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) > cutoff) {
            out.push_back(ev(i));
        } else {
            ++zeros;
        }
    }
    if (zero_modes) *zero_modes = zeros;
    return out;
}

RootPair range_square_roots(const Eigen::MatrixXd& psd) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(psd);
    if (eig.info() != Eigen::Success) {
        throw std::runtime_error("range_square_roots: eigensolver failed");
    }
    const Eigen::VectorXd& gamma = eig.eigenvalues();
    const Eigen::MatrixXd& basis = eig.eigenvectors();
    const Eigen::Index k = gamma.size();
    // Ascending order: index 0 is the dropped zero mode.
    const auto kept = basis.rightCols(k - 1);
    const Eigen::VectorXd g = gamma.tail(k - 1);
    RootPair out;
    out.root = kept * g.cwiseSqrt().asDiagonal() * kept.transpose();
    out.inv_root = kept * g.cwiseSqrt().cwiseInverse().asDiagonal() * kept.transpose();
    return out;
}

DiagonalWeights random_diagonal(Eigen::Index n, Eigen::Index m, double delta, std::uint64_t seed) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("random_diagonal: delta must be positive");
    }
    CounterRng rng(seed);
    auto draw = [&](Eigen::Index r, Eigen::Index c) {
        Grid g(r, c);
        for (Eigen::Index i = 0; i < g.size(); ++i) {
            g.data()[i] = (1.0 - rng.uniform()) / delta;  // (0, 1/delta]
        }
        return g;
    };
    DiagonalWeights d;
    d.dv = draw(std::max<Eigen::Index>(n - 1, 0), m);
    d.dh = draw(n, std::max<Eigen::Index>(m - 1, 0));
    return d;
}

ConditioningReport conditioning_report(Eigen::Index n, Eigen::Index m, double delta, double tau,
                                       std::uint64_t seed) {
    if (n < 1 || m < 1 || n * m > 1024) {
        throw ResourceLimit("conditioning_report: need 1 <= n*m <= 1024");
    }
    return conditioning_report(n, m, random_diagonal(n, m, delta, seed), tau);
}

ConditioningReport conditioning_report(Eigen::Index n, Eigen::Index m, const DiagonalWeights& d,
                                       double tau) {
    if (n < 1 || m < 1 || n * m > 1024) {
        throw ResourceLimit("conditioning_report: need 1 <= n*m <= 1024");
    }
    const Eigen::MatrixXd a = materialize_dense_system(n, m, d, tau);
    const Eigen::MatrixXd dmat = materialize_dense_preconditioner(n, m, d, tau);
    const Eigen::MatrixXd inv_root = range_square_roots(dmat).inv_root;
    Eigen::MatrixXd pre = inv_root * a * inv_root;
    pre = 0.5 * (pre + pre.transpose());

    ConditioningReport rep;
    rep.n = n;
    rep.m = m;
    rep.eig_a = positive_spectrum(a, &rep.zero_modes_a);
    rep.eig_pre = positive_spectrum(pre, &rep.zero_modes_pre);
    if (rep.eig_a.empty() || rep.eig_pre.empty()) {
        throw std::runtime_error("conditioning_report: no positive eigenvalues");
    }
    rep.kappa_a = rep.eig_a.back() / rep.eig_a.front();
    rep.kappa_pre = rep.eig_pre.back() / rep.eig_pre.front();
    rep.rho_a = cg_rate(rep.kappa_a);
    rep.rho_pre = cg_rate(rep.kappa_pre);
    return rep;
}

}  // namespace irlsunwrap
