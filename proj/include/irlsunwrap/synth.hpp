#pragma once

#include <cstdint>
#include <string_view>

#include "irlsunwrap/phase.hpp"

namespace irlsunwrap {

/// Counter-based SplitMix64 stream.
///
/// The i-th draw (i = 1, 2, ...) is finalize(seed + i * 0x9E3779B97F4A7C15)
/// with the standard SplitMix64 finalizer, so any language with 64-bit
/// wrapping arithmetic reproduces the integer stream bit for bit. Uniforms
/// take the top 53 bits; normals use the cosine branch of Box-Muller on two
/// consecutive uniforms.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t next_u64() noexcept;
    /// Uniform in [0, 1).
    double uniform() noexcept;
    /// Standard normal.
    double normal() noexcept;

    static std::uint64_t finalize(std::uint64_t z) noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

enum class SceneKind { Ramp, GaussianBumps, PlateauDiscontinuity };

SceneKind parse_scene_kind(std::string_view name);

struct SceneSpec {
    SceneKind kind = SceneKind::GaussianBumps;
    Eigen::Index rows = 64;
    Eigen::Index cols = 64;
    double amplitude = 10.0;     // radians
    double feature_scale = 8.0;  // pixels
    std::uint64_t seed = 0;

    void validate() const;
};

/// Unwrapped ground truth.
///
/// Ramp: U[i][j] = (amplitude / feature_scale) * i.
/// GaussianBumps: max(1, round(rows*cols / (4 feature_scale^2))) Gaussians with
///   centres uniform over the grid, widths feature_scale * [0.5, 1.5) and
///   signed heights amplitude * [-1, 1).
/// PlateauDiscontinuity: 0 on one side of a seeded straight line through the
///   central half of the grid and `amplitude` on the other.
Grid generate_scene(const SceneSpec& spec);

WrappedPhase wrap_scene(const Grid& u);

/// Adds N(0, sigma^2) noise and re-wraps into [0, 2pi).
WrappedPhase add_phase_noise(const WrappedPhase& x, double sigma, std::uint64_t seed);

}  // namespace irlsunwrap
