#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "irlsunwrap/diagnostics.hpp"
#include "irlsunwrap/irls.hpp"
#include "irlsunwrap/npy.hpp"
#include "irlsunwrap/pcg.hpp"
#include "irlsunwrap/synth.hpp"

namespace irlsunwrap::cli {

namespace {

using nlohmann::json;

Grid load_finite(const std::string& path) {
    Grid g = read_npy(path).data;
    if (g.size() == 0) {
        throw FormatError(path + ": empty array");
    }
    if (!g.allFinite()) {
        throw FormatError(path + ": contains non-finite values");
    }
    return g;
}

void write_json(const std::optional<std::string>& path, const json& doc) {
    if (!path) {
        std::cout << doc.dump(2) << '\n';
        return;
    }
    std::ofstream out(*path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + *path);
    }
    out << doc.dump(2) << '\n';
}

struct UnwrapArgs {
    std::string input;
    std::string output;
    std::optional<std::string> cv;
    std::optional<std::string> ch;
    std::optional<std::string> trace;
    ModelParams model;
    IrlsParams irls;
    bool congruent = false;
    std::string interval = "symmetric";
    std::string basis = "numeric";
};

int cmd_unwrap(const UnwrapArgs& a) {
    const WrappedPhase x = WrappedPhase::wrap(load_finite(a.input));
    WeightField c = WeightField::uniform(x.rows(), x.cols());
    if (a.cv || a.ch) {
        if (!a.cv || !a.ch) {
            throw std::invalid_argument("--cv and --ch must be given together");
        }
        c.cv = read_npy(*a.cv).data;
        c.ch = read_npy(*a.ch).data;
        try {
            c.validate(x.rows(), x.cols());
        } catch (const DimensionMismatch&) {
            throw;
        } catch (const std::invalid_argument& e) {
            throw FormatError(std::string("weights: ") + e.what());
        }
    }

    UnwrapOptions opts;
    opts.interval = a.interval == "positive" ? GradientInterval::Positive : GradientInterval::Symmetric;
    opts.basis = a.basis == "analytic" ? SpectralBasis::Analytic : SpectralBasis::Numeric;
    const IrlsResult res = unwrap(x, c, a.model, a.irls, opts);

    Grid u = res.u;
    if (a.congruent) {
        u = congruent_round(u.array() + congruence_offset(u, x), x);
    }
    write_npy(a.output, u);

    if (a.trace) {
        std::ofstream out(*a.trace, std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + *a.trace);
        }
        for (const IrlsRecord& r : res.trace) {
            out << json{{"k", r.k},
                        {"m_cg", r.m_cg},
                        {"delta_rel", r.delta_rel},
                        {"h_delta", r.h_delta},
                        {"cg_iters", r.cg_iters},
                        {"sufficient_decrease", r.sufficient_decrease},
                        {"fallback", r.fallback}}
                       .dump()
                << '\n';
        }
    }
    return kExitOk;
}

struct SynthArgs {
    std::string kind = "gaussian-bumps";
    SceneSpec spec;
    bool wrap = false;
    double noise_sigma = 0.0;
    std::optional<std::string> out_truth;
    std::optional<std::string> out_wrapped;
};

int cmd_synth(SynthArgs a) {
    a.spec.kind = parse_scene_kind(a.kind);
    const Grid truth = generate_scene(a.spec);
    if (a.out_truth) {
        write_npy(*a.out_truth, truth);
    }
    if (a.wrap || a.out_wrapped) {
        if (!a.out_wrapped) {
            throw std::invalid_argument("--wrap needs --out-wrapped");
        }
        WrappedPhase x = wrap_scene(truth);
        x = add_phase_noise(x, a.noise_sigma, CounterRng::finalize(a.spec.seed));
        write_npy(*a.out_wrapped, x.values());
    }
    return kExitOk;
}

int cmd_error(const std::string& estimate, const std::string& truth,
              const std::optional<std::string>& json_out) {
    const ErrorReport rep = shift_error(load_finite(estimate), load_finite(truth));
    write_json(json_out, json{{"alpha", rep.alpha},
                              {"max_abs", rep.max_abs},
                              {"rmse", rep.rmse},
                              {"congruent_fraction", rep.congruent_fraction}});
    return kExitOk;
}

int cmd_spectrum(int n, int m, double delta, double tau, std::uint64_t seed,
                 const std::optional<std::string>& json_out) {
    const ConditioningReport rep = conditioning_report(n, m, delta, tau, seed);
    write_json(json_out, json{{"n", rep.n},
                              {"m", rep.m},
                              {"delta", delta},
                              {"tau", tau},
                              {"seed", seed},
                              {"eig_a", rep.eig_a},
                              {"eig_pre", rep.eig_pre},
                              {"zero_modes_a", rep.zero_modes_a},
                              {"zero_modes_pre", rep.zero_modes_pre},
                              {"kappa_a", rep.kappa_a},
                              {"kappa_pre", rep.kappa_pre},
                              {"rho_a", rep.rho_a},
                              {"rho_pre", rep.rho_pre}});
    return kExitOk;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Weighted L1 phase unwrapping by iteratively reweighted least squares"};
    app.require_subcommand(1);

    UnwrapArgs ua;
    auto* unwrap_cmd = app.add_subcommand("unwrap", "Unwrap a wrapped phase image");
    unwrap_cmd->add_option("--input", ua.input, "Wrapped phase (.npy)")->required();
    unwrap_cmd->add_option("--output", ua.output, "Unwrapped phase (.npy)")->required();
    unwrap_cmd->add_option("--cv", ua.cv, "Vertical arc weights, (N-1) x M (.npy)");
    unwrap_cmd->add_option("--ch", ua.ch, "Horizontal arc weights, N x (M-1) (.npy)");
    unwrap_cmd->add_option("--tau", ua.model.tau, "Penalty parameter")->capture_default_str();
    unwrap_cmd->add_option("--delta", ua.model.delta, "Smoothing parameter")->capture_default_str();
    unwrap_cmd->add_option("--max-outer", ua.irls.max_outer_iters, "Outer iteration cap")
        ->capture_default_str();
    unwrap_cmd->add_option("--cg-start", ua.irls.max_iter_cg_start, "Initial CG budget")
        ->capture_default_str();
    unwrap_cmd->add_option("--eps-tol", ua.irls.rel_improvement_tol, "Relative improvement tolerance")
        ->capture_default_str();
    unwrap_cmd->add_option("--cg-growth", ua.irls.cg_growth_factor, "CG budget growth factor")
        ->capture_default_str();
    unwrap_cmd->add_option("--cg-cap", ua.irls.max_cg_iters_cap, "CG budget cap")
        ->capture_default_str();
    unwrap_cmd->add_option("--cg-tol", ua.irls.cg_rel_tol, "CG relative residual tolerance")
        ->capture_default_str();
    unwrap_cmd->add_option("--trace", ua.trace, "Per-iteration trace (JSON lines)");
    unwrap_cmd->add_flag("--congruent", ua.congruent, "Round the output to be congruent with the input");
    unwrap_cmd->add_option("--gradient-interval", ua.interval, "Principal interval for gradients")
        ->check(CLI::IsMember({"symmetric", "positive"}))
        ->capture_default_str();
    unwrap_cmd->add_option("--basis", ua.basis, "Spectral basis for the preconditioner")
        ->check(CLI::IsMember({"numeric", "analytic"}))
        ->capture_default_str();

    SynthArgs sa;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic scene");
    synth_cmd->add_option("--kind", sa.kind, "ramp | gaussian-bumps | plateau-discontinuity")
        ->check(CLI::IsMember({"ramp", "gaussian-bumps", "plateau-discontinuity"}))
        ->capture_default_str();
    synth_cmd->add_option("--rows", sa.spec.rows)->capture_default_str();
    synth_cmd->add_option("--cols", sa.spec.cols)->capture_default_str();
    synth_cmd->add_option("--amplitude", sa.spec.amplitude, "Radians")->capture_default_str();
    synth_cmd->add_option("--scale", sa.spec.feature_scale, "Feature scale in pixels")
        ->capture_default_str();
    synth_cmd->add_option("--seed", sa.spec.seed)->capture_default_str();
    synth_cmd->add_flag("--wrap", sa.wrap, "Write the wrapped scene to --out-wrapped");
    synth_cmd->add_option("--noise-sigma", sa.noise_sigma, "Phase noise std (radians)")
        ->capture_default_str();
    synth_cmd->add_option("--out-truth", sa.out_truth, "Unwrapped ground truth (.npy)");
    synth_cmd->add_option("--out-wrapped", sa.out_wrapped, "Wrapped (noisy) scene (.npy)");

    std::string estimate;
    std::string truth;
    std::optional<std::string> error_json;
    auto* error_cmd = app.add_subcommand("error", "Shift-optimal error against ground truth");
    error_cmd->add_option("--estimate", estimate)->required();
    error_cmd->add_option("--truth", truth)->required();
    error_cmd->add_option("--json-out", error_json);

    int sn = 16;
    int sm = 16;
    double sdelta = 1e-6;
    double stau = 1e-2;
    std::uint64_t sseed = 0;
    std::optional<std::string> spectrum_json;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Conditioning of the system with and without preconditioning");
    spectrum_cmd->add_option("--n", sn)->capture_default_str();
    spectrum_cmd->add_option("--m", sm)->capture_default_str();
    spectrum_cmd->add_option("--delta", sdelta)->capture_default_str();
    spectrum_cmd->add_option("--tau", stau)->capture_default_str();
    spectrum_cmd->add_option("--seed", sseed)->capture_default_str();
    spectrum_cmd->add_option("--json-out", spectrum_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (unwrap_cmd->parsed()) return cmd_unwrap(ua);
        if (synth_cmd->parsed()) return cmd_synth(sa);
        if (error_cmd->parsed()) return cmd_error(estimate, truth, error_json);
        if (spectrum_cmd->parsed()) return cmd_spectrum(sn, sm, sdelta, stau, sseed, spectrum_json);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDimension;
    } catch (const NumericalBreakdown& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBreakdown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace irlsunwrap::cli
