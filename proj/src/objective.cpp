#include "irlsunwrap/objective.hpp"

#include <cmath>

namespace irlsunwrap {

namespace {

void check_shapes(const SystemVector& x, const GradientField& g, const WeightField& c) {
    auto same = [](const Grid& a, const Grid& b) {
        return a.rows() == b.rows() && a.cols() == b.cols();
    };
    if (!same(x.vv, g.gv) || !same(x.vh, g.gh) || !same(x.vv, c.cv) || !same(x.vh, c.ch)) {
        throw DimensionMismatch("objective: state, gradients and weights disagree in shape");
    }
}

// (1/2tau) (||S U - G^v - V^v||^2 + ||U T - G^h - V^h||^2)
double penalty(const SystemVector& x, const GradientField& g, double tau) {
    const double rv = (apply_s(x.u) - g.gv - x.vv).squaredNorm();
    const double rh = (apply_t(x.u) - g.gh - x.vh).squaredNorm();
    return (rv + rh) / (2.0 * tau);
}

double smoothed_abs_sum(const Grid& c, const Grid& v, double delta) {
    const double d2 = delta * delta;
    return (c.array().square() * v.array().square() + d2).sqrt().sum();
}

double reweighted_sum(const Grid& c, const Grid& v, const Grid& w, double delta) {
    const double d2 = delta * delta;
    return 0.5 * ((c.array().square() * v.array().square() + d2) / w.array() + w.array()).sum();
}

}  // namespace

void ModelParams::validate() const {
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("tau must be positive and finite");
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::invalid_argument("delta must be positive and finite");
    }
}

double eval_f(const SystemVector& x, const GradientField& g, const WeightField& c,
              const ModelParams& p) {
    check_shapes(x, g, c);
    const double l1 = c.cv.cwiseProduct(x.vv).cwiseAbs().sum() +
                      c.ch.cwiseProduct(x.vh).cwiseAbs().sum();
    return l1 + penalty(x, g, p.tau);
}

double eval_f_delta(const SystemVector& x, const GradientField& g, const WeightField& c,
                    const ModelParams& p) {
    check_shapes(x, g, c);
    return smoothed_abs_sum(c.cv, x.vv, p.delta) + smoothed_abs_sum(c.ch, x.vh, p.delta) +
           penalty(x, g, p.tau);
}

double eval_h_delta(const SystemVector& x, const IrlsWeights& w, const GradientField& g,
                    const WeightField& c, const ModelParams& p) {
    check_shapes(x, g, c);
    if (w.wv.rows() != x.vv.rows() || w.wv.cols() != x.vv.cols() ||
        w.wh.rows() != x.vh.rows() || w.wh.cols() != x.vh.cols()) {
        throw DimensionMismatch("eval_h_delta: weights disagree in shape");
    }
    const double floor = 0.5 * p.delta;
    if ((w.wv.size() > 0 && !(w.wv.minCoeff() >= floor)) ||
        (w.wh.size() > 0 && !(w.wh.minCoeff() >= floor))) {
        throw std::invalid_argument("eval_h_delta: weight below delta/2");
    }
    return reweighted_sum(c.cv, x.vv, w.wv, p.delta) + reweighted_sum(c.ch, x.vh, w.wh, p.delta) +
           penalty(x, g, p.tau);
}

IrlsWeights update_weights(const SystemVector& x, const WeightField& c, double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("update_weights: delta must be positive");
    }
    const double d2 = delta * delta;
    IrlsWeights w;
    w.wv = (c.cv.array().square() * x.vv.array().square() + d2).sqrt();
    w.wh = (c.ch.array().square() * x.vh.array().square() + d2).sqrt();
    return w;
}

DiagonalWeights system_diagonal(const WeightField& c, const IrlsWeights& w) {
    return {c.cv.array().square() / w.wv.array(), c.ch.array().square() / w.wh.array()};
}

double lipschitz_constant(const WeightField& c, const ModelParams& p) {
    const double cmax = c.max_entry();
    return 12.0 / p.tau + cmax * cmax / p.delta;
}

SystemVector h_delta_gradient(const SystemVector& x, const IrlsWeights& w, const GradientField& g,
                              const WeightField& c, const ModelParams& p) {
    check_shapes(x, g, c);
    const double inv_tau = 1.0 / p.tau;
    const Grid rv = apply_s(x.u) - g.gv - x.vv;
    const Grid rh = apply_t(x.u) - g.gh - x.vh;
    const DiagonalWeights d = system_diagonal(c, w);

    SystemVector grad;
    grad.u = inv_tau * (apply_s_transpose(rv) + apply_t_transpose(rh));
    grad.vv = d.dv.cwiseProduct(x.vv) - inv_tau * rv;
    grad.vh = d.dh.cwiseProduct(x.vh) - inv_tau * rh;
    return grad;
}

SystemVector candidate_step(const SystemVector& x, const IrlsWeights& w, const GradientField& g,
                            const WeightField& c, const ModelParams& p, double lipschitz) {
    if (!(lipschitz > 0.0)) {
        throw std::invalid_argument("candidate_step: L must be positive");
    }
    SystemVector out = x;
    axpy(-1.0 / lipschitz, h_delta_gradient(x, w, g, c, p), out);
    return out;
}

bool sufficient_decrease_holds(const SystemVector& x_new, const SystemVector& x_old,
                               const IrlsWeights& w, const GradientField& g,
                               const WeightField& c, const ModelParams& p, double lipschitz) {
    const SystemVector cand = candidate_step(x_old, w, g, c, p, lipschitz);
    return eval_h_delta(x_new, w, g, c, p) <= eval_h_delta(cand, w, g, c, p);
}

}  // namespace irlsunwrap
