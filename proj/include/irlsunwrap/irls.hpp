#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "irlsunwrap/objective.hpp"
#include "irlsunwrap/preconditioner.hpp"

namespace irlsunwrap {

/// Outer-loop controls. Defaults follow the reference experiments for the
/// CG-budget heuristic; the caps and CG tolerance are safety limits.
struct IrlsParams {
    int max_iter_cg_start = 5;
    double rel_improvement_tol = 1e-3;
    double cg_growth_factor = 1.7;
    int max_outer_iters = 100;
    int max_cg_iters_cap = 10000;
    double cg_rel_tol = 1e-10;
    /// Residual nullspace re-projection period inside PCG.
    int cg_reproject_every = 50;

    void validate() const;
};

struct IrlsRecord {
    int k = 0;
    int m_cg = 0;              // CG budget used in this iteration
    double delta_rel = 0.0;    // relative improvement from the weight update after the solve
    double h_delta = 0.0;      // H_delta(x^{k+1}, W^k)
    int cg_iters = 0;
    bool sufficient_decrease = true;  // CG output met the decrease test on its own
    bool fallback = false;            // candidate step used instead of the CG output
};

struct IrlsResult {
    Grid u;  // mean-zero
    Grid vv;
    Grid vh;
    std::vector<IrlsRecord> trace;
};

namespace budget {
struct Keep {};
struct Stop {};
struct Grow {
    int new_m;
};
}  // namespace budget

using BudgetDecision = std::variant<budget::Keep, budget::Stop, budget::Grow>;

/// CG budget rule applied after each weight update. m_prev is the budget of
/// the iteration just finished, m_prev2 the one before it.
BudgetDecision cg_budget_update(double delta_rel, int m_prev, int m_prev2,
                                const IrlsParams& params);

/// (h_old_w - h_new_w) / h_old_w; h_old_w must be positive.
double relative_improvement(double h_old_w, double h_new_w);

/// What an observer sees after each accepted outer step. `before` and
/// `after` are consecutive iterates; `weights` are the ones the step used.
struct IrlsStepView {
    int k;
    const SystemVector& before;
    const SystemVector& after;
    const IrlsWeights& weights;
};

struct UnwrapOptions {
    GradientInterval interval = GradientInterval::Symmetric;
    SpectralBasis basis = SpectralBasis::Numeric;
    std::function<void(const IrlsStepView&)> observer;
};

/// Weighted-L1 phase unwrapping by iteratively reweighted least squares.
IrlsResult unwrap(const WrappedPhase& x, const WeightField& c, const ModelParams& model,
                  const IrlsParams& params, const UnwrapOptions& options = {});

/// Same loop driven directly by gradients (for callers that already have them).
/// `options.interval` is unused here.
IrlsResult unwrap_gradients(const GradientField& g, const WeightField& c, const ModelParams& model,
                            const IrlsParams& params, const UnwrapOptions& options = {});

}  // namespace irlsunwrap
