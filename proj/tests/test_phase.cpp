#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "irlsunwrap/phase.hpp"
#include "support.hpp"

using namespace irlsunwrap;
using Catch::Approx;

TEST_CASE("wrap_to_principal examples", "[phase]") {
    CHECK(wrap_to_principal(3 * kPi, -kPi) == -kPi);
    CHECK(wrap_to_principal(0.0, 0.0) == 0.0);
    CHECK(wrap_to_principal(6.0, -kPi) == Approx(6.0 - kTwoPi).margin(1e-15));
    CHECK(wrap_to_principal(kTwoPi, 0.0) == 0.0);
    CHECK(wrap_to_principal(-1e-300, 0.0) < kTwoPi);
}

TEST_CASE("wrap_to_principal rejects bad input", "[phase]") {
    CHECK_THROWS_AS(wrap_to_principal(std::numeric_limits<double>::quiet_NaN(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(wrap_to_principal(std::numeric_limits<double>::infinity(), -kPi), std::invalid_argument);
    CHECK_THROWS_AS(wrap_to_principal(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("wrap_to_principal range and periodicity", "[phase][property]") {
    testsupport::Gen gen(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const double x = gen.uniform(-50.0, 50.0);
        for (double lo : {0.0, -kPi}) {
            const double y = wrap_to_principal(x, lo);
            REQUIRE(y >= lo);
            REQUIRE(y < lo + kTwoPi);
            const double k = std::round((x - y) / kTwoPi);
            REQUIRE(std::abs(y - (x - kTwoPi * k)) <=
                    4 * std::numeric_limits<double>::epsilon() * std::max(std::abs(x), kTwoPi));

            const int shift = static_cast<int>(gen.uniform(-1000.0, 1000.0));
            const double y2 = wrap_to_principal(x + kTwoPi * shift, lo);
            // Adding 2 pi k to x loses bits proportional to |x + 2 pi k|.
            const double ulp = std::numeric_limits<double>::epsilon() * std::abs(x + kTwoPi * shift);
            const double diff = std::abs(y2 - y);
            REQUIRE(std::min(diff, std::abs(diff - kTwoPi)) <= 8 * ulp + 1e-300);
        }
    }
}

TEST_CASE("WrappedPhase validates range", "[phase]") {
    Grid g(1, 2);
    g << 0.0, kTwoPi;
    CHECK_THROWS_AS(WrappedPhase(g), std::invalid_argument);
    const WrappedPhase w = WrappedPhase::wrap(g);
    CHECK(w.values()(0, 1) == 0.0);
    CHECK_THROWS_AS(WrappedPhase(Grid(0, 0)), std::invalid_argument);
}

TEST_CASE("wrapped_gradients examples", "[phase]") {
    Grid col(2, 1);
    col << 0.0, 1.0;
    GradientField g = wrapped_gradients(WrappedPhase(col));
    REQUIRE(g.gv.rows() == 1);
    CHECK(g.gv(0, 0) == 1.0);
    CHECK(g.gh.size() == 0);
    CHECK(g.gh.rows() == 2);

    col << 0.0, 6.0;
    g = wrapped_gradients(WrappedPhase(col));
    CHECK(g.gv(0, 0) == Approx(6.0 - kTwoPi).margin(1e-15));

    g = wrapped_gradients(WrappedPhase(col), GradientInterval::Positive);
    CHECK(g.gv(0, 0) == 6.0);
}

TEST_CASE("wrapped_gradients of a 0.3 ramp", "[phase]") {
    Grid u(20, 7);
    for (Eigen::Index i = 0; i < u.rows(); ++i) u.row(i).setConstant(0.3 * static_cast<double>(i));
    const GradientField g = wrapped_gradients(WrappedPhase::wrap(u));
    CHECK((g.gv.array() - 0.3).abs().maxCoeff() <= 1e-12);
    CHECK(g.gh.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("wrapped gradients are in [-pi, pi)", "[phase][property]") {
    testsupport::Gen gen(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Grid x = gen.grid(gen.size(1, 9), gen.size(1, 9), 0.0, kTwoPi - 1e-9);
        const GradientField g = wrapped_gradients(WrappedPhase(x));
        if (g.gv.size()) {
            REQUIRE(g.gv.minCoeff() >= -kPi);
            REQUIRE(g.gv.maxCoeff() < kPi);
        }
        if (g.gh.size()) {
            REQUIRE(g.gh.minCoeff() >= -kPi);
            REQUIRE(g.gh.maxCoeff() < kPi);
        }
    }
}

TEST_CASE("Itoh consistency of wrapped gradients", "[phase][property]") {
    testsupport::Gen gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = gen.size(1, 12), m = gen.size(1, 12);
        // Separable walk: every neighbour step lies strictly inside (-pi, pi).
        Eigen::VectorXd a(n), b(m);
        a(0) = gen.uniform(-20, 20);
        b(0) = 0.0;
        for (Eigen::Index i = 1; i < n; ++i) a(i) = a(i - 1) + gen.uniform(-3.0, 3.0);
        for (Eigen::Index j = 1; j < m; ++j) b(j) = b(j - 1) + gen.uniform(-3.0, 3.0);
        Grid u(n, m);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < m; ++j) u(i, j) = a(i) + b(j);
        const GradientField g = wrapped_gradients(WrappedPhase::wrap(u));
        for (Eigen::Index i = 0; i + 1 < n; ++i)
            for (Eigen::Index j = 0; j < m; ++j) REQUIRE(std::abs(g.gv(i, j) - (u(i + 1, j) - u(i, j))) <= 1e-10);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j + 1 < m; ++j) REQUIRE(std::abs(g.gh(i, j) - (u(i, j + 1) - u(i, j))) <= 1e-10);
    }
}

TEST_CASE("WeightField validation", "[phase]") {
    WeightField c = WeightField::uniform(3, 4);
    CHECK(c.cv.rows() == 2);
    CHECK(c.ch.cols() == 3);
    CHECK_NOTHROW(c.validate(3, 4));
    CHECK_THROWS_AS(c.validate(4, 4), DimensionMismatch);
    c.cv(0, 0) = -1.0;
    CHECK_THROWS_AS(c.validate(3, 4), std::invalid_argument);
    CHECK_THROWS_AS(WeightField::uniform(3, 4, 0.0).validate(3, 4), std::invalid_argument);
    CHECK(WeightField::uniform(3, 4, 2.5).max_entry() == 2.5);
}

TEST_CASE("shift_error examples", "[phase]") {
    testsupport::Gen gen(3);
    const Grid truth = gen.grid(6, 5, -10, 10);
    ErrorReport r = shift_error(truth, truth);
    CHECK(r.alpha == 0.0);
    CHECK(r.max_abs == 0.0);
    CHECK(r.rmse == 0.0);
    CHECK(r.congruent_fraction == 1.0);

    r = shift_error(truth.array() - 5.0, truth);
    CHECK(r.alpha == Approx(5.0).margin(1e-12));
    CHECK(r.max_abs <= 1e-12);

    CHECK_THROWS_AS(shift_error(truth, Grid::Zero(5, 6)), DimensionMismatch);
}

TEST_CASE("shift_error invariants", "[phase][property]") {
    testsupport::Gen gen(9);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index n = gen.size(1, 8), m = gen.size(1, 8);
        const Grid u = gen.grid(n, m, -5, 5);
        const Grid t = gen.grid(n, m, -5, 5);
        const ErrorReport r = shift_error(u, t);
        REQUIRE(r.error_grid.isApprox(t - (u.array() + r.alpha).matrix(), 1e-12));
        REQUIRE(r.rmse * r.rmse * static_cast<double>(n * m) ==
                Approx(r.error_grid.squaredNorm()).epsilon(1e-12));

        const double c = gen.uniform(-100, 100);
        REQUIRE(shift_error(u.array() + c, t).max_abs == Approx(r.max_abs).margin(1e-10));

        // The optimal shift beats every constant on a grid of candidates.
        const double best = (t - (u.array() + r.alpha).matrix()).norm();
        for (double s = r.alpha - 3.0; s <= r.alpha + 3.0; s += 0.05) {
            REQUIRE(best <= (t - (u.array() + s).matrix()).norm() + 1e-12);
        }
    }
}

TEST_CASE("congruent_round examples", "[phase]") {
    testsupport::Gen gen(4);
    const WrappedPhase x(gen.grid(5, 4, 0.0, 6.0));
    CHECK(congruent_round(x.values(), x) == x.values());
    const Grid shifted = x.values().array() + kTwoPi + 0.4;
    CHECK(congruent_round(shifted, x).isApprox((x.values().array() + kTwoPi).matrix(), 1e-15));
}

TEST_CASE("congruent_round output is congruent", "[phase][property]") {
    testsupport::Gen gen(12);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = gen.size(1, 9), m = gen.size(1, 9);
        const WrappedPhase x(gen.grid(n, m, 0.0, kTwoPi - 1e-12));
        const Grid u = gen.grid(n, m, -40, 40);
        const Grid out = congruent_round(u, x);
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            const double q = (out.data()[i] - x.values().data()[i]) / kTwoPi;
            REQUIRE(std::abs(q - std::round(q)) <= 1e-12);
            REQUIRE(std::abs(out.data()[i] - u.data()[i]) <= kPi + 1e-9);
        }
    }
}

TEST_CASE("congruence_offset recovers a shift", "[phase]") {
    testsupport::Gen gen(13);
    const Grid truth = gen.grid(6, 6, -10, 10);
    const WrappedPhase x = WrappedPhase::wrap(truth);
    const Grid u = truth.array() - 1.234;
    const double c = congruence_offset(u, x);
    CHECK(std::abs(wrap_to_principal(c - 1.234, -kPi)) <= 1e-12);
}

TEST_CASE("center_mean_zero", "[phase]") {
    CHECK(center_mean_zero(Grid::Constant(3, 4, 7.5)).cwiseAbs().maxCoeff() == 0.0);
    testsupport::Gen gen(1);
    const Grid u = center_mean_zero(gen.grid(17, 9, -100, 100));
    CHECK(std::abs(u.sum()) <= 1e-9 * 17 * 9);
    CHECK(center_mean_zero(u).isApprox(u, 1e-14));
}
