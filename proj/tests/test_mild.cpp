#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mildtf/errors.hpp"
#include "mildtf/mild.hpp"

using namespace mildtf;

namespace {

constexpr double kSqrt2 = 1.41421356237309505;

FiniteSignal random_signal(const GridModel& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FiniteSignal f = zeros(grid);
    for (std::int64_t n = 0; n < grid.N; ++n) {
        f[n] = cplx(u(rng), u(rng));
    }
    return f;
}

FiniteSignal smooth_signal(const GridModel& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::int64_t> shift(-grid.N / 4, grid.N / 4);
    FiniteSignal f = zeros(grid);
    const FiniteSignal base = gaussian(grid);
    for (int i = 0; i < 3; ++i) {
        const cplx c(u(rng), u(rng));
        const FiniteSignal g = tf_shift(base, TFPoint{shift(rng), shift(rng)});
        for (std::int64_t n = 0; n < grid.N; ++n) f[n] += c * g[n];
    }
    return f;
}

// theta-style sums evaluated directly; they converge in a handful of terms
double theta_sum(double decay) {
    double acc = 1.0;
    for (int k = 1; k < 12; ++k) {
        acc += 2.0 * std::exp(-decay * k * k);
    }
    return acc;
}

}  // namespace

TEST_CASE("s0 norm of the gaussian is sqrt(2)") {
    const GridModel g8 = make_grid(8);
    CHECK(std::abs(s0_norm(gaussian(g8), gaussian(g8)) - kSqrt2) < 1e-9);
    const GridModel g16 = make_grid(16);
    CHECK(std::abs(s0_norm(gaussian(g16), gaussian(g16)) - kSqrt2) < 1e-11);
}

TEST_CASE("s0 norm is a TF-invariant norm") {
    const GridModel g = make_grid(8);
    const FiniteSignal w = gaussian(g);
    const FiniteSignal f = smooth_signal(g, 101);
    const FiniteSignal h = random_signal(g, 103);
    const double nf = s0_norm(f, w);
    const double nh = s0_norm(h, w);

    CHECK(s0_norm(zeros(g), w) == 0.0);
    CHECK(std::abs(s0_norm(tf_shift(f, TFPoint{9, 22}), w) - nf) < 1e-12 * nf);
    CHECK(std::abs(s0_norm(cplx(-2.5, 1.0) * f, w) - std::abs(cplx(-2.5, 1.0)) * nf) <
          1e-12 * nf);
    CHECK(s0_norm(f + h, w) <= (nf + nh) * (1.0 + 1e-12));
    CHECK_THROWS_AS(s0_norm(f, zeros(g)), std::invalid_argument);
}

TEST_CASE("sop norm endpoints: dirac and constant") {
    const GridModel g = make_grid(8);
    const FiniteSignal w = gaussian(g);
    // V_w delta_k has magnitude |w(k - t)|; the sup is the window peak.
    CHECK(std::abs(sop_norm(dirac(g, 13), w) - max_abs(w)) < 1e-12);
    // The constant is the Fourier dual case: sup_s |w_hat(s)| = 1.
    CHECK(std::abs(sop_norm(constant(g, cplx(1.0, 0.0)), w) - 1.0) < 1e-12);

    // subadditivity
    const FiniteSignal f = random_signal(g, 107);
    const FiniteSignal h = random_signal(g, 109);
    CHECK(sop_norm(f + h, w) <=
          (sop_norm(f, w) + sop_norm(h, w)) * (1.0 + 1e-12));
}

TEST_CASE("mild distance: pseudometric bounded by the sop norm") {
    const GridModel g = make_grid(8);
    const FiniteSignal w = gaussian(g);
    const FiniteSignal f = smooth_signal(g, 113);
    const FiniteSignal h = smooth_signal(g, 127);

    CHECK(mild_distance(f, f, w, 2.0) == 0.0);
    CHECK_THROWS_AS(mild_distance(f, h, w, 0.0), std::invalid_argument);

    const double sop = sop_norm(f - h, w);
    double prev = 0.0;
    for (double R : {0.5, 1.0, 2.0, 4.0}) {
        const double d = mild_distance(f, h, w, R);
        CHECK(d <= sop);       // exact sup comparison
        CHECK(d >= prev);      // monotone in R
        prev = d;
    }
    // clamping: any R beyond beta/2 equals the full-plane value
    CHECK(mild_distance(f, h, w, 1e9) == mild_distance(f, h, w, g.beta / 2.0));
    // a genuine shift is visible near the origin
    CHECK(mild_distance(gaussian(g), tf_shift(gaussian(g), TFPoint{g.L, 0}), w, 2.0) > 1e-3);
}

TEST_CASE("mild report radius schedule") {
    const GridModel g = make_grid(8);
    const FiniteSignal w = gaussian(g);
    const MildReport rep = mild_report(smooth_signal(g, 131), smooth_signal(g, 137), w, 1e-3);
    REQUIRE(rep.radius_schedule.size() == 8);
    CHECK(rep.radius_schedule[0] == doctest::Approx(g.beta / 8.0));
    for (std::size_t i = 1; i < rep.deviations.size(); ++i) {
        CHECK(rep.deviations[i] >= rep.deviations[i - 1]);
        CHECK(rep.radius_schedule[i] <= g.beta / 2.0);
    }
    CHECK(rep.aggregated >= 0.0);
    CHECK(rep.aggregated <= 1.0);
}

TEST_CASE("riemann-normalized comb sequence converges mildly to 1") {
    const GridModel g = make_grid(16);
    const FiniteSignal w = gaussian(g);
    const FiniteSignal one = constant(g, cplx(1.0, 0.0));
    double prev = -1.0;
    std::vector<double> devs;
    for (std::int64_t r : {g.L, g.L / 2, g.L / 4, std::int64_t{1}}) {
        const FiniteSignal sigma =
            cplx(static_cast<double>(r) * g.alpha, 0.0) * dirac_comb(g, r);
        devs.push_back(mild_distance(sigma, one, w, 2.0));
    }
    CHECK(devs[0] > devs[1]);
    CHECK(devs[1] > devs[2]);
    CHECK(devs[2] > devs[3]);
    CHECK(devs[3] == 0.0);  // r = 1: alpha * comb is exactly the constant
    // the tail member is already far below the leading ones
    CHECK(devs[2] < 1e-4);
    (void)prev;
}

TEST_CASE("mild convergence is preserved under convolution with a summable measure") {
    const GridModel g = make_grid(8);
    const FiniteSignal w = gaussian(g);
    const FiniteSignal one = constant(g, cplx(1.0, 0.0));
    // mu: a small weighted comb with ||mu||_1 = 1
    FiniteSignal mu = zeros(g);
    mu[g.center] = cplx(0.5 / g.alpha, 0.0);
    mu[g.wrap(g.center + g.L)] = cplx(0.25 / g.alpha, 0.0);
    mu[g.wrap(g.center - 2 * g.L)] = cplx(0.25 / g.alpha, 0.0);
    CHECK(norm_l1(mu) == doctest::Approx(1.0).epsilon(1e-15));

    double prev_conv = 1e300;
    for (std::int64_t r : {g.L, g.L / 2, std::int64_t{1}}) {
        const FiniteSignal sigma =
            cplx(static_cast<double>(r) * g.alpha, 0.0) * dirac_comb(g, r);
        const double base_sop = sop_norm(sigma - one, w);
        const double conv_dev =
            mild_distance(convolve(mu, sigma), convolve(mu, one), w, 2.0);
        CHECK(conv_dev <= norm_l1(mu) * base_sop * (1.0 + 1e-10));
        CHECK(conv_dev <= prev_conv * (1.0 + 1e-12));
        prev_conv = conv_dev;
    }
    CHECK(prev_conv < 1e-12);  // the r = 1 member is the limit itself
}

TEST_CASE("periodize and sample") {
    const GridModel g = make_grid(4);
    const FiniteSignal f = random_signal(g, 139);

    CHECK(max_abs_diff(periodize(f, g.N), f) == 0.0);
    CHECK(max_abs_diff(periodize(dirac(g, g.center), 4), dirac_comb(g, 4)) == 0.0);
    CHECK(max_abs_diff(sample(f, 1), f) == 0.0);
    CHECK_THROWS_AS(periodize(f, 3), std::invalid_argument);
    CHECK_THROWS_AS(sample(f, 5), std::invalid_argument);

    // periodize == convolution with the comb
    for (std::int64_t r : {1, 2, 4, 8, 16}) {
        CHECK(max_abs_diff(periodize(f, r), convolve(dirac_comb(g, r), f)) < 1e-13);
    }

    // commutation is exact for nested strides, bitwise
    for (std::int64_t rp : {1, 2, 4, 8, 16}) {
        for (std::int64_t rs : {1, 2, 4, 8, 16}) {
            if (rp % rs != 0) continue;
            CHECK(max_abs_diff(sample(periodize(f, rp), rs),
                               periodize(sample(f, rs), rp)) == 0.0);
        }
    }

    // fourier(sample(f, r)) = (1/r) periodize(fourier(f), N/r)
    const GridModel g8 = make_grid(8);
    const FiniteSignal h = random_signal(g8, 149);
    for (std::int64_t r : {1, 2, 4, 8, 16, 32, 64}) {
        const FiniteSignal lhs = fourier(sample(h, r));
        const FiniteSignal rhs = cplx(1.0 / static_cast<double>(r), 0.0) *
                                 periodize(fourier(h), g8.N / r);
        CHECK(max_abs_diff(lhs, rhs) / std::max(max_abs(rhs), 1e-300) < 1e-11);
    }
}

TEST_CASE("poisson summation is exact on the grid") {
    const GridModel g = make_grid(8);

    const PoissonCheck pc = poisson_check(gaussian(g));
    const double theta = theta_sum(std::numbers::pi);
    CHECK(pc.deviation < 1e-12);
    CHECK(std::abs(pc.time_sum.real() - theta) < 1e-12);
    CHECK(std::abs(pc.freq_sum.real() - theta) < 1e-12);

    // integer translate leaves the integer-sample sum unchanged
    const PoissonCheck moved = poisson_check(tf_shift(gaussian(g), TFPoint{g.L, 0}));
    CHECK(std::abs(moved.time_sum.real() - theta) < 1e-12);
    CHECK(moved.deviation < 1e-12);

    // point mass: both sides equal 1/alpha
    const PoissonCheck dp = poisson_check(dirac(g, g.center));
    CHECK(dp.deviation < 1e-12);
    CHECK(dp.time_sum.real() == doctest::Approx(1.0 / g.alpha).epsilon(1e-14));

    // arbitrary rough signals satisfy it too
    CHECK(poisson_check(random_signal(g, 151)).deviation < 1e-12);
}

TEST_CASE("riemann functional sweeps to the integral") {
    const GridModel g = make_grid(8);
    const FiniteSignal gau = gaussian(g);

    const cplx fine = riemann_functional(gau, gau, 1);
    CHECK(std::abs(fine - inner(gau, gau)) < 1e-14);
    CHECK(std::abs(fine.real() - 1.0 / kSqrt2) < 1e-13);

    // integer-step sum: theta-type oracle sum of e^{-2 pi k^2}
    const cplx coarse = riemann_functional(gau, gau, g.L);
    CHECK(std::abs(coarse.real() - theta_sum(2.0 * std::numbers::pi)) < 1e-12);

    double prev = 1e300;
    for (std::int64_t r : {8, 4, 2, 1}) {
        const double dev = std::abs(riemann_functional(gau, gau, r) - fine);
        CHECK(dev <= prev);
        prev = dev;
    }
    CHECK_THROWS_AS(riemann_functional(gau, gau, 3), std::invalid_argument);
}

TEST_CASE("bupu partitions unity exactly, dyadic or not") {
    for (std::int64_t L : {4, 6, 8}) {
        const GridModel g = make_grid(L);
        for (std::int64_t w = 2; 2 * w <= g.N; w *= 2) {
            if (g.N % w != 0) continue;
            const Bupu bupu = make_bupu(g, w);
            FiniteSignal sum = zeros(g);
            for (std::int64_t k = 0; k < g.N / w; ++k) {
                const FiniteSignal t = translate(bupu.psi, k * w);
                for (std::int64_t n = 0; n < g.N; ++n) sum[n] += t[n];
            }
            for (std::int64_t n = 0; n < g.N; ++n) {
                CHECK(sum[n] == cplx(1.0, 0.0));
            }
            CHECK(max_abs_diff(multiply(bupu.tau, bupu.psi), bupu.psi) == 0.0);
        }
    }
    // non-power-of-two stride on a non-power-of-two grid
    const GridModel g6 = make_grid(6);
    const Bupu b = make_bupu(g6, 6);
    FiniteSignal sum = zeros(g6);
    for (std::int64_t k = 0; k < g6.N / 6; ++k) {
        const FiniteSignal t = translate(b.psi, k * 6);
        for (std::int64_t n = 0; n < g6.N; ++n) sum[n] += t[n];
    }
    for (std::int64_t n = 0; n < g6.N; ++n) CHECK(sum[n] == cplx(1.0, 0.0));

    CHECK_THROWS_AS(make_bupu(make_grid(4), 16), std::invalid_argument);  // 2w > N
    CHECK_THROWS_AS(make_bupu(make_grid(4), 3), std::invalid_argument);
}

TEST_CASE("atomic decomposition reconstructs and concentrates") {
    const GridModel g = make_grid(8);
    const Bupu bupu = make_bupu(g, 8);

    for (std::uint64_t seed : {157, 163}) {
        const FiniteSignal f = smooth_signal(g, seed);
        const AtomicDecomposition dec = atomic_decompose(f, bupu);
        CHECK(dec.reconstruction_error < 1e-10 * std::max(max_abs(f), 1.0));
        CHECK(std::isfinite(dec.norm_sum));
        CHECK(dec.norm_sum > 0.0);
        FiniteSignal rebuilt = zeros(g);
        for (const FiniteSignal& atom : dec.atoms) {
            for (std::int64_t n = 0; n < g.N; ++n) rebuilt[n] += atom[n];
        }
        // dropped atoms shift the sum by at most the drop threshold per atom
        CHECK(max_abs_diff(rebuilt, f) < 1e-8);
    }

    // frequency-flat point mass: mass concentrates in the time cell at the
    // center, i.e. j = 0
    const AtomicDecomposition dec = atomic_decompose(dirac(g, g.center), bupu);
    std::vector<double> per_j(static_cast<std::size_t>(g.N / bupu.w), 0.0);
    for (std::size_t i = 0; i < dec.atoms.size(); ++i) {
        per_j[static_cast<std::size_t>(dec.labels[i].second)] += dec.norms[i];
    }
    std::size_t argmax = 0;
    for (std::size_t j = 1; j < per_j.size(); ++j) {
        if (per_j[j] > per_j[argmax]) argmax = j;
    }
    CHECK(argmax == 0);
}

TEST_CASE("shannon reconstruction recovers band-limited signals") {
    const GridModel g = make_grid(16);  // N = 256
    const std::int64_t band = 10;
    FiniteSignal spec = fourier(gaussian(g));
    for (std::int64_t m = 0; m < g.N; ++m) {
        if (std::abs(m - g.center) > band) spec[m] = cplx(0.0, 0.0);
    }
    const FiniteSignal f = inverse_fourier(spec);

    const FiniteSignal rec = shannon_reconstruct(sample(f, 8), 8, band);
    CHECK(max_abs_diff(rec, f) / max_abs(f) < 1e-10);
    const FiniteSignal rec_plateau =
        shannon_reconstruct(sample(f, 8), 8, band, BandFilter::plateau);
    CHECK(max_abs_diff(rec_plateau, f) / max_abs(f) < 1e-10);

    // undersampled: N/r = 8 < 2*band+1 = 21, 13 aliased bins
    try {
        shannon_reconstruct(sample(f, 32), 32, band);
        FAIL("expected AliasingError");
    } catch (const AliasingError& e) {
        CHECK(e.overlap_count == 13);
    }

    // DC-only signal survives any stride
    const FiniteSignal dc = constant(g, cplx(0.25, 0.0));
    CHECK(max_abs_diff(shannon_reconstruct(sample(dc, 64), 64, 0), dc) < 1e-12);
}

TEST_CASE("gabor partial sums and tf tightness") {
    const GridModel g = make_grid(16);  // N = 256
    GaborSystem sys = make_gabor_system(gaussian(g), 8, 16);  // redundancy 2
    dual_window(sys);
    const FiniteSignal f = gaussian(g);

    // empty set: the tail is the norm itself
    const double empty_tail = gabor_partial_sum_tail(f, sys, {});
    CHECK(empty_tail == doctest::Approx(s0_norm(f, gaussian(g))).epsilon(1e-12));

    // growing boxes: nonincreasing, full lattice far below 1e-6
    double prev = empty_tail;
    for (double radius = 0.0; radius <= g.beta / 2.0; radius += 1.0) {
        const double tail = gabor_partial_sum_tail(f, sys, lattice_box(sys, radius));
        CHECK(tail <= prev * (1.0 + 1e-12) + 1e-15);
        prev = tail;
    }
    CHECK(prev < 1e-6);

    // tightness: sweep-oracle value for the gaussian at eps = 1e-3
    const TfBox box = tf_tightness({f}, sys, 1e-3);
    CHECK(!box.empty);
    CHECK(box.radius == 5.0);

    // a far TF-shifted companion forces the box out to the corner
    const FiniteSignal far = tf_shift(f, TFPoint{g.N / 2, g.N / 2});
    const TfBox box2 = tf_tightness({f, far}, sys, 1e-3);
    CHECK(box2.radius > box.radius);
    CHECK(box2.radius == g.beta / 2.0);

    // a huge epsilon is satisfied by the empty set
    const TfBox loose = tf_tightness({f}, sys, 10.0 * s0_norm(f, gaussian(g)));
    CHECK(loose.empty);

    GaborSystem nodual = make_gabor_system(gaussian(g), 8, 16);
    CHECK_THROWS_AS(gabor_partial_sum_tail(f, nodual, {}), std::invalid_argument);
}
