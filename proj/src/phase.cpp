#include "irlsunwrap/phase.hpp"

#include <cmath>
#include <complex>

namespace irlsunwrap {

double wrap_to_principal(double x, double lo) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("wrap_to_principal: non-finite input");
    }
    if (lo != 0.0 && lo != -kPi) {
        throw std::invalid_argument("wrap_to_principal: lower edge must be 0 or -pi");
    }
    // fmod is exact; only the shift by lo rounds.
    double r = std::fmod(x - lo, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r + lo;
}

WrappedPhase::WrappedPhase(Grid values) : values_(std::move(values)) {
    if (values_.size() == 0) {
        throw std::invalid_argument("WrappedPhase: empty grid");
    }
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        const double v = values_.data()[i];
        if (!std::isfinite(v) || v < 0.0 || v >= kTwoPi) {
            throw std::invalid_argument("WrappedPhase: value outside [0, 2pi)");
        }
    }
}

WrappedPhase WrappedPhase::wrap(const Grid& values) {
    return WrappedPhase(values.unaryExpr([](double v) { return wrap_to_principal(v, 0.0); }));
}

WeightField WeightField::uniform(Eigen::Index rows, Eigen::Index cols, double value) {
    return {Grid::Constant(std::max<Eigen::Index>(rows - 1, 0), cols, value),
            Grid::Constant(rows, std::max<Eigen::Index>(cols - 1, 0), value)};
}

void WeightField::validate(Eigen::Index rows, Eigen::Index cols) const {
    if (cv.rows() != rows - 1 || cv.cols() != cols || ch.rows() != rows ||
        ch.cols() != cols - 1) {
        throw DimensionMismatch("weights do not match a " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " image");
    }
    bool any_positive = false;
    for (const Grid* g : {&cv, &ch}) {
        for (Eigen::Index i = 0; i < g->size(); ++i) {
            const double w = g->data()[i];
            if (!std::isfinite(w) || w < 0.0) {
                throw std::invalid_argument("weights must be finite and nonnegative");
            }
            any_positive = any_positive || w > 0.0;
        }
    }
    if (!any_positive && cv.size() + ch.size() > 0) {
        throw std::invalid_argument("at least one weight must be positive");
    }
}

double WeightField::max_entry() const {
    double m = 0.0;
    if (cv.size() > 0) m = std::max(m, cv.maxCoeff());
    if (ch.size() > 0) m = std::max(m, ch.maxCoeff());
    return m;
}

GradientField wrapped_gradients(const WrappedPhase& x, GradientInterval interval) {
    const double lo = interval == GradientInterval::Symmetric ? -kPi : 0.0;
    const Grid& v = x.values();
    const auto n = v.rows();
    const auto m = v.cols();
    auto reduce = [lo](double d) { return wrap_to_principal(d, lo); };

    GradientField g;
    g.gv = (v.bottomRows(n - 1) - v.topRows(n - 1)).unaryExpr(reduce);
    g.gh = (v.rightCols(m - 1) - v.leftCols(m - 1)).unaryExpr(reduce);
    return g;
}

ErrorReport shift_error(const Grid& u, const Grid& truth) {
    if (u.rows() != truth.rows() || u.cols() != truth.cols()) {
        throw DimensionMismatch("shift_error: estimate and truth differ in shape");
    }
    if (u.size() == 0) {
        throw std::invalid_argument("shift_error: empty grid");
    }
    ErrorReport rep;
    const Grid diff = truth - u;
    rep.alpha = diff.mean();
    rep.error_grid = diff.array() - rep.alpha;
    rep.max_abs = rep.error_grid.cwiseAbs().maxCoeff();
    rep.rmse = std::sqrt(rep.error_grid.squaredNorm() / static_cast<double>(u.size()));

    Eigen::Index congruent = 0;
    for (Eigen::Index i = 0; i < rep.error_grid.size(); ++i) {
        const double cycles = rep.error_grid.data()[i] / kTwoPi;
        if (std::abs(cycles - std::round(cycles)) <= 1e-3) {
            ++congruent;
        }
    }
    rep.congruent_fraction = static_cast<double>(congruent) / static_cast<double>(u.size());
    return rep;
}

Grid congruent_round(const Grid& u, const WrappedPhase& x) {
    const Grid& xv = x.values();
    if (u.rows() != xv.rows() || u.cols() != xv.cols()) {
        throw DimensionMismatch("congruent_round: shapes differ");
    }
    return xv.binaryExpr(u, [](double xi, double ui) {
        return xi + kTwoPi * std::round((ui - xi) / kTwoPi);
    });
}

double congruence_offset(const Grid& u, const WrappedPhase& x) {
    const Grid& xv = x.values();
    if (u.rows() != xv.rows() || u.cols() != xv.cols()) {
        throw DimensionMismatch("congruence_offset: shapes differ");
    }
    std::complex<double> acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        acc += std::polar(1.0, xv.data()[i] - u.data()[i]);
    }
    return std::arg(acc);
}

Grid center_mean_zero(const Grid& u) {
    if (u.size() == 0) {
        return u;
    }
    return u.array() - u.mean();
}

}  // namespace irlsunwrap
