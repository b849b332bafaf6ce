#include <doctest.h>

#include <cmath>
#include <random>

#include "mildtf/errors.hpp"
#include "mildtf/gabor.hpp"

using namespace mildtf;

namespace {

FiniteSignal random_signal(const GridModel& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FiniteSignal f = zeros(grid);
    for (std::int64_t n = 0; n < grid.N; ++n) {
        f[n] = cplx(u(rng), u(rng));
    }
    return f;
}

double rel_diff(const FiniteSignal& got, const FiniteSignal& want) {
    return max_abs_diff(got, want) / std::max(max_abs(want), 1e-300);
}

}  // namespace

TEST_CASE("system construction validates strides and redundancy") {
    const GridModel g = make_grid(4);
    CHECK_THROWS_AS(make_gabor_system(gaussian(g), 3, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_gabor_system(gaussian(g), 8, 4), std::invalid_argument);  // red < 1
    CHECK_THROWS_AS(make_gabor_system(zeros(g), 4, 4), std::invalid_argument);
    const GaborSystem sys = make_gabor_system(gaussian(g), 2, 4);
    CHECK(sys.redundancy() == 2.0);
    CHECK(lattice_points(sys).size() == 8 * 4);
}

TEST_CASE("frame operator agrees with the direct lattice sum") {
    const GridModel g = make_grid(4);
    const GaborSystem sys = make_gabor_system(gaussian(g), 2, 4);
    const FiniteSignal f = random_signal(g, 61);

    FiniteSignal direct = zeros(g);
    for (const TFPoint& lambda : lattice_points(sys)) {
        const FiniteSignal atom = tf_shift(sys.window, lambda);
        const cplx c = inner(f, atom);
        for (std::int64_t n = 0; n < g.N; ++n) direct[n] += c * atom[n];
    }
    CHECK(rel_diff(frame_operator(sys, f), direct) < 1e-13);
}

TEST_CASE("frame operator is self-adjoint and commutes with lattice shifts") {
    const GridModel g = make_grid(8);
    const GaborSystem sys = make_gabor_system(gaussian(g), 8, 8);
    const FiniteSignal f = random_signal(g, 67);
    const FiniteSignal h = random_signal(g, 71);

    const cplx lhs = inner(frame_operator(sys, f), h);
    const cplx rhs = inner(f, frame_operator(sys, h));
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));

    const TFPoint lambda0{2 * sys.a, 3 * sys.b};
    const FiniteSignal a = frame_operator(sys, tf_shift(f, lambda0));
    const FiniteSignal b = tf_shift(frame_operator(sys, f), lambda0);
    CHECK(rel_diff(a, b) < 1e-12);
}

TEST_CASE("full-lattice system is tight: dual = g / (N ||g||^2)") {
    const GridModel g = make_grid(4);
    GaborSystem sys = make_gabor_system(gaussian(g), 1, 1);
    const double c =
        static_cast<double>(g.N) * inner(sys.window, sys.window).real();
    const FiniteSignal f = random_signal(g, 73);
    CHECK(rel_diff(frame_operator(sys, f), cplx(c, 0.0) * f) < 1e-12);

    const FiniteSignal dual = dual_window(sys);
    CHECK(rel_diff(dual, cplx(1.0 / c, 0.0) * sys.window) < 1e-10);
}

TEST_CASE("redundancy-2 gaussian system: dual window and reconstruction") {
    const GridModel g = make_grid(8);  // N = 64
    GaborSystem sys = make_gabor_system(gaussian(g), 4, 8);  // redundancy 2
    const FiniteSignal dual = dual_window(sys);
    CHECK(sys.dual.has_value());

    const double residual =
        norm_l2(frame_operator(sys, dual) - sys.window) / norm_l2(sys.window);
    CHECK(residual < 1e-12);

    const FiniteSignal f = random_signal(g, 79);
    const FiniteSignal rec1 = gabor_synthesis(gabor_analysis(f, sys, true), sys, false);
    CHECK(rel_diff(rec1, f) < 1e-9);
    const FiniteSignal rec2 = gabor_synthesis(gabor_analysis(f, sys, false), sys, true);
    CHECK(rel_diff(rec2, f) < 1e-9);
}

TEST_CASE("analysis of an orthogonal signal yields a zero coefficient") {
    const GridModel g = make_grid(8);
    GaborSystem sys = make_gabor_system(gaussian(g), 4, 8);
    dual_window(sys);

    const TFPoint lambda0{2 * sys.a, 5 * sys.b};
    const FiniteSignal u = tf_shift(*sys.dual, lambda0);
    FiniteSignal f = random_signal(g, 83);
    const cplx proj = inner(f, u) / inner(u, u);
    for (std::int64_t n = 0; n < g.N; ++n) f[n] -= proj * u[n];

    const GaborCoefficients c = gabor_analysis(f, sys, true);
    CHECK(std::abs(c.at(2, 5)) < 1e-12 * norm_l2(f));
}

TEST_CASE("coefficients of a lattice shift are the shifted coefficients in magnitude") {
    const GridModel g = make_grid(8);
    GaborSystem sys = make_gabor_system(gaussian(g), 4, 8);  // redundancy 2
    dual_window(sys);
    const FiniteSignal f = random_signal(g, 89);
    const TFPoint lambda0{2 * sys.a, 3 * sys.b};

    const GaborCoefficients base = gabor_analysis(f, sys, true);
    const GaborCoefficients moved = gabor_analysis(tf_shift(f, lambda0), sys, true);
    const std::int64_t nt = sys.time_steps();
    const std::int64_t ns = sys.freq_steps();
    double worst = 0.0;
    for (std::int64_t ti = 0; ti < nt; ++ti) {
        for (std::int64_t si = 0; si < ns; ++si) {
            const double lhs = std::abs(moved.at(ti, si));
            const double rhs = std::abs(base.at((ti - 2 + nt) % nt, (si - 3 + ns) % ns));
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("critically sampled gaussian is flagged ill-conditioned") {
    const GridModel g = make_grid(8);  // N = 64, a = b = 8
    const FrameBounds fb = frame_bounds(make_gabor_system(gaussian(g), 8, 8));
    CHECK(fb.condition() > 1e6);

    GaborSystem sys = make_gabor_system(gaussian(g), 8, 8);
    CHECK_THROWS_AS(dual_window(sys), NotAFrameError);
}

TEST_CASE("analysis/synthesis argument validation") {
    const GridModel g = make_grid(4);
    GaborSystem sys = make_gabor_system(gaussian(g), 2, 4);
    const FiniteSignal f = random_signal(g, 97);
    CHECK_THROWS_AS(gabor_analysis(f, sys, true), std::invalid_argument);  // no dual yet
    GaborCoefficients wrong{g, 4, 4, std::vector<cplx>(16)};
    CHECK_THROWS_AS(gabor_synthesis(wrong, sys, false), std::invalid_argument);
}

TEST_CASE("lattice_box selects wrapped physical coordinates") {
    const GridModel g = make_grid(4);
    const GaborSystem sys = make_gabor_system(gaussian(g), 4, 4);
    CHECK(lattice_box(sys, g.beta / 2.0).size() == lattice_points(sys).size());
    const auto origin_only = lattice_box(sys, 0.0);
    REQUIRE(origin_only.size() == 1);
    CHECK(origin_only[0].t_idx == 0);
    CHECK(origin_only[0].s_idx == 0);
}
