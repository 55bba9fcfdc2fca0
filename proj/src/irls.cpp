#include "irlsunwrap/irls.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "irlsunwrap/pcg.hpp"

namespace irlsunwrap {

void IrlsParams::validate() const {
    if (max_iter_cg_start < 1) {
        throw std::invalid_argument("max_iter_cg_start must be at least 1");
    }
    if (!(rel_improvement_tol > 0.0)) {
        throw std::invalid_argument("rel_improvement_tol must be positive");
    }
    if (!(cg_growth_factor > 1.0)) {
        throw std::invalid_argument("cg_growth_factor must exceed 1");
    }
    if (max_outer_iters < 1 || max_cg_iters_cap < max_iter_cg_start) {
        throw std::invalid_argument("iteration caps must be at least the starting values");
    }
    if (!(cg_rel_tol >= 0.0)) {
        throw std::invalid_argument("cg_rel_tol must be nonnegative");
    }
}

BudgetDecision cg_budget_update(double delta_rel, int m_prev, int m_prev2,
                                const IrlsParams& params) {
    if (m_prev < 1) {
        throw std::invalid_argument("cg_budget_update: m_prev must be at least 1");
    }
    if (delta_rel > params.rel_improvement_tol) {
        return budget::Keep{};
    }
    if (m_prev != m_prev2) {
        return budget::Stop{};
    }
    if (m_prev >= params.max_cg_iters_cap) {
        return budget::Stop{};
    }
    const double grown = std::ceil(params.cg_growth_factor * static_cast<double>(m_prev));
    const int capped = grown >= static_cast<double>(params.max_cg_iters_cap)
                           ? params.max_cg_iters_cap
                           : static_cast<int>(grown);
    return budget::Grow{capped};
}

double relative_improvement(double h_old_w, double h_new_w) {
    if (!(h_old_w > 0.0)) {
        throw std::invalid_argument("relative_improvement: reference value must be positive");
    }
    return (h_old_w - h_new_w) / h_old_w;
}

IrlsResult unwrap(const WrappedPhase& x, const WeightField& c, const ModelParams& model,
                  const IrlsParams& params, const UnwrapOptions& options) {
    c.validate(x.rows(), x.cols());
    return unwrap_gradients(wrapped_gradients(x, options.interval), c, model, params, options);
}

IrlsResult unwrap_gradients(const GradientField& g, const WeightField& c, const ModelParams& model,
                            const IrlsParams& params, const UnwrapOptions& options) {
    model.validate();
    params.validate();
    const Eigen::Index n = g.gh.rows();
    const Eigen::Index m = g.gv.cols();
    if (g.gv.rows() != std::max<Eigen::Index>(n - 1, 0) ||
        g.gh.cols() != std::max<Eigen::Index>(m - 1, 0)) {
        throw DimensionMismatch("unwrap: inconsistent gradient shapes");
    }
    c.validate(n, m);

    const auto cache = std::make_shared<const SpectralCache>(build_spectral_cache(n, m, options.basis));
    const SystemVector b = build_rhs(g, model.tau);
    const double lipschitz = lipschitz_constant(c, model);

    // U^0 = 0, V^0 = S U^0 - G.
    SystemVector x = SystemVector::zeros(n, m);
    x.vv = -g.gv;
    x.vh = -g.gh;
    IrlsWeights w = update_weights(x, c, model.delta);

    PcgOptions<SystemVector> cg;
    cg.rel_tol = params.cg_rel_tol;
    cg.reproject_every = params.cg_reproject_every;
    cg.project = [](SystemVector& r) { r.u.array() -= r.u.mean(); };

    IrlsResult result;
    int m_cur = params.max_iter_cg_start;
    int m_prev = m_cur;  // m_CG(-1) := m_CG(0)

    for (int k = 0; k < params.max_outer_iters; ++k) {
        const DiagonalWeights d = system_diagonal(c, w);
        const BlockPreconditioner pc(cache, d, model.tau);
        cg.max_iters = m_cur;

        const auto outcome = pcg_solve(
            [&](const SystemVector& v) { return apply_system(v, d, model.tau); },
            [&](const SystemVector& r) { return pc.apply(r); }, b, x, cg);

        const SystemVector cand = candidate_step(x, w, g, c, model, lipschitz);
        const double h_cg = eval_h_delta(outcome.x, w, g, c, model);
        const double h_cand = eval_h_delta(cand, w, g, c, model);

        IrlsRecord rec;
        rec.k = k;
        rec.m_cg = m_cur;
        rec.cg_iters = outcome.iterations;
        rec.sufficient_decrease = h_cg <= h_cand;
        rec.fallback = !rec.sufficient_decrease;

        SystemVector next = rec.fallback ? cand : outcome.x;
        rec.h_delta = rec.fallback ? h_cand : h_cg;
        next.u.array() -= next.u.mean();

        if (options.observer) {
            options.observer(IrlsStepView{k, x, next, w});
        }
        x = std::move(next);

        IrlsWeights w_next = update_weights(x, c, model.delta);
        rec.delta_rel = relative_improvement(rec.h_delta, eval_h_delta(x, w_next, g, c, model));
        w = std::move(w_next);

        const BudgetDecision decision = cg_budget_update(rec.delta_rel, m_cur, m_prev, params);
        result.trace.push_back(rec);
        if (std::holds_alternative<budget::Stop>(decision)) {
            break;
        }
        const int m_next =
            std::holds_alternative<budget::Grow>(decision) ? std::get<budget::Grow>(decision).new_m
                                                           : m_cur;
        m_prev = m_cur;
        m_cur = m_next;
    }

    result.u = std::move(x.u);
    result.vv = std::move(x.vv);
    result.vh = std::move(x.vh);
    return result;
}

}  // namespace irlsunwrap
