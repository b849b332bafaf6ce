#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mildtf/ref.hpp"
#include "mildtf/transforms.hpp"

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

TEST_CASE("fourier matches the brute-force transform, power-of-two and not") {
    for (std::int64_t L : {2, 3, 4, 6, 8}) {
        const GridModel g = make_grid(L);
        const FiniteSignal f = random_signal(g, 31 + static_cast<std::uint64_t>(L));
        CHECK(rel_diff(fourier(f), ref::fourier(f)) < 1e-12);
        CHECK(rel_diff(inverse_fourier(f), ref::inverse_fourier(f)) < 1e-12);
    }
}

TEST_CASE("fourier elementary images") {
    const GridModel g = make_grid(8);

    // F(delta_center) = constant 1, and back
    const FiniteSignal one = constant(g, cplx(1.0, 0.0));
    CHECK(max_abs_diff(fourier(dirac(g, g.center)), one) < 1e-13);
    CHECK(max_abs_diff(inverse_fourier(one), dirac(g, g.center)) < 1e-12);

    // Gaussian self-duality
    CHECK(rel_diff(fourier(gaussian(g)), gaussian(g)) < 1e-13);
    CHECK(rel_diff(fourier(gaussian(make_grid(16))), gaussian(make_grid(16))) < 1e-13);

    // comb duality with the closed form (beta/r) * comb(N/r)
    const GridModel g4 = make_grid(4);
    for (std::int64_t r : {1, 2, 4, 8, 16}) {
        const FiniteSignal got = fourier(dirac_comb(g4, r));
        const FiniteSignal want =
            cplx(g4.beta / static_cast<double>(r), 0.0) * dirac_comb(g4, g4.N / r);
        CHECK(max_abs_diff(got, want) / static_cast<double>(g4.N / r) < 1e-13);
    }
}

TEST_CASE("fourier structure: inversion, parity, Plancherel, fundamental relationship") {
    const GridModel g = make_grid(8);
    const FiniteSignal f = random_signal(g, 37);
    const FiniteSignal h = random_signal(g, 41);

    CHECK(rel_diff(inverse_fourier(fourier(f)), f) < 1e-13);
    CHECK(rel_diff(fourier(fourier(f)), reflect(f)) < 1e-12);
    CHECK(rel_diff(fourier(fourier(fourier(fourier(f)))), f) < 1e-12);

    const double scale = norm_l2(f) * norm_l2(h);
    CHECK(std::abs(inner(fourier(f), fourier(h)) - inner(f, h)) < 1e-12 * scale);
    CHECK(std::abs(pairing(fourier(f), h) - pairing(f, fourier(h))) < 1e-12 * scale);
}

TEST_CASE("stft values and covariance") {
    const GridModel g = make_grid(8);
    const FiniteSignal gau = gaussian(g);
    const STFTMap map = stft(gau, gau);

    // V_g g(0,0) = ||g||_2^2 = 2^{-1/2}
    CHECK(std::abs(map.at(0, 0) - inner(gau, gau)) < 1e-13);
    CHECK(map.at(0, 0).real() == doctest::Approx(0.70710678118654752).epsilon(1e-10));

    // closed-form magnitude 2^{-1/2} e^{-pi (t^2+s^2)/2} on physical coordinates
    double worst = 0.0;
    for (std::int64_t t = 0; t < g.N; ++t) {
        for (std::int64_t s = 0; s < g.N; ++s) {
            const double tau = g.shift_coord(t);
            const double sig = g.shift_coord(s);
            const double expect = 0.70710678118654752 *
                                  std::exp(-std::numbers::pi * (tau * tau + sig * sig) / 2.0);
            worst = std::max(worst, std::abs(std::abs(map.at(t, s)) - expect));
        }
    }
    CHECK(worst < 1e-10);

    // covariance: shifting the signal translates the magnitudes on the TF grid
    const FiniteSignal f = random_signal(g, 43);
    const TFPoint mu{8, 24};
    const STFTMap base = stft(f, gau);
    const STFTMap moved = stft(tf_shift(f, mu), gau);
    double cov_worst = 0.0;
    for (std::int64_t t = 0; t < g.N; ++t) {
        for (std::int64_t s = 0; s < g.N; ++s) {
            const double lhs = std::abs(moved.at(t, s));
            const double rhs =
                std::abs(base.at(g.wrap(t - mu.t_idx), g.wrap(s - mu.s_idx)));
            cov_worst = std::max(cov_worst, std::abs(lhs - rhs));
        }
    }
    CHECK(cov_worst < 1e-13);

    // against the direct O(N^3) reference
    const STFTMap fast = stft(f, gau);
    const STFTMap slow = ref::stft(f, gau);
    double ref_worst = 0.0;
    for (std::size_t i = 0; i < fast.values.size(); ++i) {
        ref_worst = std::max(ref_worst, std::abs(fast.values[i] - slow.values[i]));
    }
    CHECK(ref_worst < 1e-12);

    CHECK_THROWS_AS(stft(f, zeros(g)), std::invalid_argument);
    CHECK_THROWS_AS(stft(f, gaussian(make_grid(4))), std::invalid_argument);
}

TEST_CASE("stft refuses the memory cap") {
    const GridModel big = make_grid(128);  // N = 16384 > 4096
    const FiniteSignal f = constant(big, cplx(1.0, 0.0));
    CHECK_THROWS_AS(stft(f, f), std::invalid_argument);
}

TEST_CASE("convolution and multiplication") {
    const GridModel g = make_grid(8);
    const FiniteSignal f = random_signal(g, 47);
    const FiniteSignal h = random_signal(g, 53);

    // delta is the convolution identity
    CHECK(rel_diff(convolve(dirac(g, g.center), f), f) < 1e-14);

    // comb multiplication keeps node values scaled by 1/alpha
    const FiniteSignal masked = multiply(dirac_comb(g, 8), f);
    for (std::int64_t n = 0; n < g.N; ++n) {
        if ((n - g.center) % 8 == 0) {
            CHECK(masked[n] == cplx(1.0 / g.alpha, 0.0) * f[n]);
        } else {
            CHECK(masked[n] == cplx(0.0, 0.0));
        }
    }
    CHECK(max_abs_diff(multiply(constant(g, cplx(1.0, 0.0)), f), f) == 0.0);

    // both convolution theorems
    CHECK(rel_diff(fourier(convolve(f, h)), multiply(fourier(f), fourier(h))) < 1e-11);
    CHECK(rel_diff(fourier(multiply(f, h)), convolve(fourier(f), fourier(h))) < 1e-11);

    CHECK_THROWS_AS(convolve(f, random_signal(make_grid(4), 3)), std::invalid_argument);
    CHECK_THROWS_AS(multiply(f, random_signal(make_grid(4), 3)), std::invalid_argument);
}
