#include "irlsunwrap/synth.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace irlsunwrap {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t CounterRng::finalize(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t CounterRng::next_u64() noexcept {
    ++counter_;
    return finalize(seed_ + counter_ * kGamma);
}

double CounterRng::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

SceneKind parse_scene_kind(std::string_view name) {
    if (name == "ramp") return SceneKind::Ramp;
    if (name == "gaussian-bumps") return SceneKind::GaussianBumps;
    if (name == "plateau-discontinuity") return SceneKind::PlateauDiscontinuity;
    throw std::invalid_argument("unknown scene kind: " + std::string(name));
}

void SceneSpec::validate() const {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("scene: rows and cols must be positive");
    }
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw std::invalid_argument("scene: amplitude must be finite and nonnegative");
    }
    if (!(feature_scale > 0.0) || !std::isfinite(feature_scale)) {
        throw std::invalid_argument("scene: feature_scale must be positive");
    }
}

Grid generate_scene(const SceneSpec& spec) {
    spec.validate();
    const auto n = spec.rows;
    const auto m = spec.cols;
    const double nd = static_cast<double>(n);
    const double md = static_cast<double>(m);
    CounterRng rng(spec.seed);
    Grid u = Grid::Zero(n, m);

    switch (spec.kind) {
    case SceneKind::Ramp: {
        const double slope = spec.amplitude / spec.feature_scale;
        for (Eigen::Index i = 0; i < n; ++i) {
            u.row(i).setConstant(slope * static_cast<double>(i));
        }
        break;
    }
    case SceneKind::GaussianBumps: {
        const double fs = spec.feature_scale;
        const auto count = std::max<long long>(1, std::llround(nd * md / (4.0 * fs * fs)));
        for (long long b = 0; b < count; ++b) {
            const double ci = rng.uniform() * nd;
            const double cj = rng.uniform() * md;
            const double sigma = fs * (0.5 + rng.uniform());
            const double height = spec.amplitude * (2.0 * rng.uniform() - 1.0);
            const double inv = 1.0 / (2.0 * sigma * sigma);
            for (Eigen::Index i = 0; i < n; ++i) {
                const double di = static_cast<double>(i) - ci;
                for (Eigen::Index j = 0; j < m; ++j) {
                    const double dj = static_cast<double>(j) - cj;
                    u(i, j) += height * std::exp(-(di * di + dj * dj) * inv);
                }
            }
        }
        break;
    }
    case SceneKind::PlateauDiscontinuity: {
        const double pi0 = (0.25 + 0.5 * rng.uniform()) * (nd - 1.0);
        const double pj0 = (0.25 + 0.5 * rng.uniform()) * (md - 1.0);
        const double theta = kPi * rng.uniform();
        const double ni = std::cos(theta);
        const double nj = std::sin(theta);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                const double side = (static_cast<double>(i) - pi0) * ni +
                                    (static_cast<double>(j) - pj0) * nj;
                u(i, j) = side >= 0.0 ? spec.amplitude : 0.0;
            }
        }
        break;
    }
    }
    return u;
}

WrappedPhase wrap_scene(const Grid& u) { return WrappedPhase::wrap(u); }

WrappedPhase add_phase_noise(const WrappedPhase& x, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("add_phase_noise: sigma must be finite and nonnegative");
    }
    if (sigma == 0.0) {
        return x;
    }
    CounterRng rng(seed);
    Grid noisy = x.values();
    for (Eigen::Index i = 0; i < noisy.size(); ++i) {
        noisy.data()[i] += sigma * rng.normal();
    }
    return WrappedPhase::wrap(noisy);
}

}  // namespace irlsunwrap
