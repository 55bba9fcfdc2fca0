#pragma once

#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace irlsunwrap {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Dense 2-D array of reals, row-major so rows match the on-disk layout.
using Grid = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Thrown when array shapes disagree (image vs weights, estimate vs truth, ...).
class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Lower edge of the principal interval used when reducing phase differences.
enum class GradientInterval {
    Symmetric,  // [-pi, pi)
    Positive,   // [0, 2pi)
};

/// Reduce x into [lo, lo + 2pi). lo must be 0 or -pi.
double wrap_to_principal(double x, double lo);

/// A phase image whose every entry lies in [0, 2pi).
///
/// Construction validates the range; use `WrappedPhase::wrap` to reduce an
/// arbitrary finite grid first.
class WrappedPhase {
public:
    explicit WrappedPhase(Grid values);

    static WrappedPhase wrap(const Grid& values);

    const Grid& values() const noexcept { return values_; }
    Eigen::Index rows() const noexcept { return values_.rows(); }
    Eigen::Index cols() const noexcept { return values_.cols(); }

private:
    Grid values_;
};

/// Vertical ((N-1) x M) and horizontal (N x (M-1)) neighbour differences.
struct GradientField {
    Grid gv;
    Grid gh;
};

/// Nonnegative per-arc weights, shaped like a GradientField.
struct WeightField {
    Grid cv;
    Grid ch;

    static WeightField uniform(Eigen::Index rows, Eigen::Index cols, double value = 1.0);

    /// Throws DimensionMismatch or std::invalid_argument when the field is not
    /// usable for an N x M image.
    void validate(Eigen::Index rows, Eigen::Index cols) const;

    /// Largest entry over both arrays (0 when both are empty).
    double max_entry() const;
};

GradientField wrapped_gradients(const WrappedPhase& x,
                                GradientInterval interval = GradientInterval::Symmetric);

struct ErrorReport {
    double alpha = 0.0;
    Grid error_grid;
    double max_abs = 0.0;
    double rmse = 0.0;
    /// Fraction of pixels whose shifted error is within 1e-3 cycles of a
    /// multiple of 2pi.
    double congruent_fraction = 0.0;
};

/// Error of an estimate against ground truth after removing the best constant shift.
ErrorReport shift_error(const Grid& u, const Grid& truth);

/// Snap each pixel of u to the nearest value congruent to x modulo 2pi.
Grid congruent_round(const Grid& u, const WrappedPhase& x);

/// Constant c for which u + c best lines up with x modulo 2pi (circular mean
/// of the pixelwise offsets). Useful before congruent_round on a mean-zero u.
double congruence_offset(const Grid& u, const WrappedPhase& x);

Grid center_mean_zero(const Grid& u);

}  // namespace irlsunwrap
