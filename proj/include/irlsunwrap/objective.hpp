#pragma once

#include "irlsunwrap/grid_operators.hpp"
#include "irlsunwrap/phase.hpp"

namespace irlsunwrap {

/// Penalty tau on the slack coupling and smoothing floor delta.
struct ModelParams {
    double tau = 1e-2;
    double delta = 1e-6;

    void validate() const;
};

/// Reweighting variables. Every entry must stay >= delta / 2.
struct IrlsWeights {
    Grid wv;
    Grid wh;
};

/// Weighted L1 norm of the slacks plus the two quadratic penalty terms.
double eval_f(const SystemVector& x, const GradientField& g, const WeightField& c,
              const ModelParams& p);

/// Smoothed objective: each |C V| replaced by sqrt(C^2 V^2 + delta^2).
double eval_f_delta(const SystemVector& x, const GradientField& g, const WeightField& c,
                    const ModelParams& p);

/// Joint objective in (x, W) whose partial minimum over W is eval_f_delta.
/// Throws std::invalid_argument if any weight is below delta / 2.
double eval_h_delta(const SystemVector& x, const IrlsWeights& w, const GradientField& g,
                    const WeightField& c, const ModelParams& p);

/// Closed-form minimizer of eval_h_delta over W for fixed x.
IrlsWeights update_weights(const SystemVector& x, const WeightField& c, double delta);

/// D = C (.) C / W, the slack diagonal of the inner system.
DiagonalWeights system_diagonal(const WeightField& c, const IrlsWeights& w);

/// 12 / tau + C_max^2 / delta.
double lipschitz_constant(const WeightField& c, const ModelParams& p);

/// Gradient of eval_h_delta with respect to x, for fixed W.
SystemVector h_delta_gradient(const SystemVector& x, const IrlsWeights& w, const GradientField& g,
                              const WeightField& c, const ModelParams& p);

/// One explicit gradient step of length 1/L on eval_h_delta(., w).
SystemVector candidate_step(const SystemVector& x, const IrlsWeights& w, const GradientField& g,
                            const WeightField& c, const ModelParams& p, double lipschitz);

/// True iff H(x_new, w) <= H(candidate_step(x_old, w), w).
bool sufficient_decrease_holds(const SystemVector& x_new, const SystemVector& x_old,
                               const IrlsWeights& w, const GradientField& g,
                               const WeightField& c, const ModelParams& p, double lipschitz);

}  // namespace irlsunwrap
