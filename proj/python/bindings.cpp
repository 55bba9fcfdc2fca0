#include <optional>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "irlsunwrap/diagnostics.hpp"
#include "irlsunwrap/irls.hpp"
#include "irlsunwrap/npy.hpp"
#include "irlsunwrap/pcg.hpp"
#include "irlsunwrap/synth.hpp"

namespace py = pybind11;
using namespace irlsunwrap;

namespace {

GradientInterval parse_interval(const std::string& s) {
    if (s == "symmetric") return GradientInterval::Symmetric;
    if (s == "positive") return GradientInterval::Positive;
    throw std::invalid_argument("gradient_interval must be 'symmetric' or 'positive'");
}

py::dict unwrap_py(const Grid& x, std::optional<Grid> cv, std::optional<Grid> ch, double tau,
                   double delta, int max_outer, int cg_start, double eps_tol, double cg_growth,
                   int cg_cap, double cg_tol, const std::string& gradient_interval,
                   bool congruent) {
    const WrappedPhase wx = WrappedPhase::wrap(x);
    WeightField c = WeightField::uniform(wx.rows(), wx.cols());
    if (cv.has_value() != ch.has_value()) {
        throw std::invalid_argument("cv and ch must be given together");
    }
    if (cv) {
        c.cv = *cv;
        c.ch = *ch;
        c.validate(wx.rows(), wx.cols());
    }
    ModelParams model{tau, delta};
    IrlsParams params;
    params.max_outer_iters = max_outer;
    params.max_iter_cg_start = cg_start;
    params.rel_improvement_tol = eps_tol;
    params.cg_growth_factor = cg_growth;
    params.max_cg_iters_cap = cg_cap;
    params.cg_rel_tol = cg_tol;
    UnwrapOptions opts;
    opts.interval = parse_interval(gradient_interval);

    IrlsResult res;
    {
        py::gil_scoped_release release;
        res = unwrap(wx, c, model, params, opts);
    }
    Grid u = res.u;
    if (congruent) {
        u = congruent_round(u.array() + congruence_offset(u, wx), wx);
    }
    py::list trace;
    for (const IrlsRecord& r : res.trace) {
        py::dict d;
        d["k"] = r.k;
        d["m_cg"] = r.m_cg;
        d["delta_rel"] = r.delta_rel;
        d["h_delta"] = r.h_delta;
        d["cg_iters"] = r.cg_iters;
        d["sufficient_decrease"] = r.sufficient_decrease;
        d["fallback"] = r.fallback;
        trace.append(d);
    }
    py::dict out;
    out["u"] = u;
    out["vv"] = res.vv;
    out["vh"] = res.vh;
    out["trace"] = trace;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weighted L1 phase unwrapping (C++ core)";

    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);
    py::register_exception<NumericalBreakdown>(m, "NumericalBreakdown", PyExc_ArithmeticError);

    m.def("unwrap", &unwrap_py, py::arg("x"), py::arg("cv") = py::none(),
          py::arg("ch") = py::none(), py::arg("tau") = 1e-2, py::arg("delta") = 1e-6,
          py::arg("max_outer") = 100, py::arg("cg_start") = 5, py::arg("eps_tol") = 1e-3,
          py::arg("cg_growth") = 1.7, py::arg("cg_cap") = 10000, py::arg("cg_tol") = 1e-10,
          py::arg("gradient_interval") = "symmetric", py::arg("congruent") = false,
          "Unwrap a wrapped phase image. Returns a dict with u (mean zero), vv, vh and trace.");

    m.def("wrap_to_principal", &wrap_to_principal, py::arg("x"), py::arg("lo") = 0.0);
    m.def(
        "wrapped_gradients",
        [](const Grid& x, const std::string& interval) {
            const GradientField g = wrapped_gradients(WrappedPhase::wrap(x), parse_interval(interval));
            return py::make_tuple(g.gv, g.gh);
        },
        py::arg("x"), py::arg("gradient_interval") = "symmetric");

    m.def(
        "generate_scene",
        [](const std::string& kind, Eigen::Index rows, Eigen::Index cols, double amplitude,
           double scale, std::uint64_t seed) {
            SceneSpec s;
            s.kind = parse_scene_kind(kind);
            s.rows = rows;
            s.cols = cols;
            s.amplitude = amplitude;
            s.feature_scale = scale;
            s.seed = seed;
            return generate_scene(s);
        },
        py::arg("kind"), py::arg("rows"), py::arg("cols"), py::arg("amplitude"), py::arg("scale"),
        py::arg("seed") = 0);
    m.def("wrap_scene", [](const Grid& u) { return wrap_scene(u).values(); }, py::arg("u"));
    m.def(
        "add_phase_noise",
        [](const Grid& x, double sigma, std::uint64_t seed) {
            return add_phase_noise(WrappedPhase(x), sigma, seed).values();
        },
        py::arg("x"), py::arg("sigma"), py::arg("seed"));

    m.def(
        "shift_error",
        [](const Grid& u, const Grid& truth) {
            const ErrorReport r = shift_error(u, truth);
            py::dict d;
            d["alpha"] = r.alpha;
            d["max_abs"] = r.max_abs;
            d["rmse"] = r.rmse;
            d["congruent_fraction"] = r.congruent_fraction;
            return d;
        },
        py::arg("estimate"), py::arg("truth"));
    m.def(
        "congruent_round",
        [](const Grid& u, const Grid& x) { return congruent_round(u, WrappedPhase::wrap(x)); },
        py::arg("u"), py::arg("x"));

    m.def(
        "conditioning_report",
        [](Eigen::Index n, Eigen::Index mm, double delta, double tau, std::uint64_t seed) {
            const ConditioningReport r = conditioning_report(n, mm, delta, tau, seed);
            py::dict d;
            d["n"] = r.n;
            d["m"] = r.m;
            d["eig_a"] = r.eig_a;
            d["eig_pre"] = r.eig_pre;
            d["zero_modes_a"] = r.zero_modes_a;
            d["zero_modes_pre"] = r.zero_modes_pre;
            d["kappa_a"] = r.kappa_a;
            d["kappa_pre"] = r.kappa_pre;
            d["rho_a"] = r.rho_a;
            d["rho_pre"] = r.rho_pre;
            return d;
        },
        py::arg("n"), py::arg("m"), py::arg("delta") = 1e-6, py::arg("tau") = 1e-2,
        py::arg("seed") = 0);

    m.def("read_npy", [](const std::string& path) { return read_npy(path).data; }, py::arg("path"));
    m.def(
        "write_npy",
        [](const std::string& path, const Grid& data, const std::string& dtype) {
            if (dtype != "<f8" && dtype != "<f4") throw std::invalid_argument("dtype must be '<f8' or '<f4'");
            write_npy(path, data, dtype == "<f8" ? NpyDtype::Float64 : NpyDtype::Float32);
        },
        py::arg("path"), py::arg("data"), py::arg("dtype") = "<f8");
}
