#include "mildtf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mildtf/demo.hpp"
#include "mildtf/errors.hpp"
#include "mildtf/gabor.hpp"
#include "mildtf/gsp.hpp"
#include "mildtf/mild.hpp"
#include "mildtf/ref.hpp"
#include "mildtf/transforms.hpp"

namespace mildtf {

namespace {

using Clock = std::chrono::steady_clock;

class Battery {
public:
    Battery(std::string suite, const VerifyConfig& cfg, std::vector<CheckResult>& out)
        : suite_(std::move(suite)), cfg_(cfg), out_(out) {}

    const VerifyConfig& cfg() const { return cfg_; }

    void check(const std::string& name, double deviation, double tolerance,
               std::string detail = {}) {
        const auto now = Clock::now();
        CheckResult r;
        r.suite = suite_;
        r.name = name;
        r.deviation = deviation;
        r.tolerance = tolerance;
        r.pass = deviation <= tolerance && std::isfinite(deviation);
        r.seconds = std::chrono::duration<double>(now - mark_).count();
        r.detail = std::move(detail);
        out_.push_back(std::move(r));
        mark_ = now;
    }

private:
    std::string suite_;
    const VerifyConfig& cfg_;
    std::vector<CheckResult>& out_;
    Clock::time_point mark_ = Clock::now();
};

// ---------------------------------------------------------------------------
// Random test signals: Gaussians, modulated/translated Gaussians and convex
// combinations of them -- the smooth battery used across the suites.

FiniteSignal random_smooth(const GridModel& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_int_distribution<std::int64_t> shift(-grid.N / 4, grid.N / 4);
    FiniteSignal f = zeros(grid);
    const FiniteSignal base = gaussian(grid);
    const int terms = 3;
    for (int i = 0; i < terms; ++i) {
        const cplx c(coeff(rng), coeff(rng));
        const FiniteSignal g = tf_shift(base, TFPoint{shift(rng), shift(rng)});
        for (std::int64_t n = 0; n < grid.N; ++n) {
            f[n] += c * g[n];
        }
    }
    return f;
}

FiniteSignal random_rough(const GridModel& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    FiniteSignal f = zeros(grid);
    for (std::int64_t n = 0; n < grid.N; ++n) {
        f[n] = cplx(coeff(rng), coeff(rng));
    }
    return f;
}

double rel_max_diff(const FiniteSignal& got, const FiniteSignal& want) {
    const double scale = std::max(max_abs(want), 1e-300);
    return max_abs_diff(got, want) / scale;
}

// ---------------------------------------------------------------------------

void suite_poisson(Battery& b) {
    for (std::int64_t L : b.cfg().L_values) {
        const GridModel grid = make_grid(L);
        b.check("gaussian/L" + std::to_string(L), poisson_check(gaussian(grid)).deviation,
                1e-12);
        std::mt19937_64 rng(b.cfg().seed);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            worst = std::max(worst, poisson_check(random_smooth(grid, rng)).deviation);
        }
        b.check("random-smooth-battery/L" + std::to_string(L), worst, 1e-12);
    }
}

void suite_fourier(Battery& b) {
    for (std::int64_t L : b.cfg().L_values) {
        const GridModel grid = make_grid(L);
        const std::string tag = "/L" + std::to_string(L);
        std::mt19937_64 rng(b.cfg().seed + static_cast<std::uint64_t>(L));
        const FiniteSignal f = random_smooth(grid, rng);
        const FiniteSignal h = random_rough(grid, rng);

        b.check("inversion" + tag, rel_max_diff(inverse_fourier(fourier(h)), h), 1e-12);

        const double pair_scale = norm_l2(f) * norm_l2(h);
        const cplx lhs = inner(fourier(f), fourier(h));
        const cplx rhs = inner(f, h);
        b.check("plancherel" + tag, std::abs(lhs - rhs) / pair_scale, 1e-12);

        const cplx fr_lhs = pairing(fourier(f), h);
        const cplx fr_rhs = pairing(f, fourier(h));
        b.check("fundamental-relationship" + tag, std::abs(fr_lhs - fr_rhs) / pair_scale,
                1e-12);

        b.check("double-transform-is-reflect" + tag,
                rel_max_diff(fourier(fourier(h)), reflect(h)), 1e-12);
        b.check("fourth-power-is-identity" + tag,
                rel_max_diff(fourier(fourier(fourier(fourier(h)))), h), 1e-12);

        const FiniteSignal gauss = gaussian(grid);
        b.check("gaussian-self-dual" + tag, rel_max_diff(fourier(gauss), gauss), 1e-12);
    }

    const GridModel g64 = make_grid(8);
    std::mt19937_64 rng(b.cfg().seed ^ 0x64);
    const FiniteSignal f = random_rough(g64, rng);
    b.check("fast-vs-brute-force/N64", rel_max_diff(fourier(f), ref::fourier(f)), 1e-12);
    b.check("inverse-fast-vs-brute-force/N64",
            rel_max_diff(inverse_fourier(f), ref::inverse_fourier(f)), 1e-12);
}

void suite_comb(Battery& b) {
    const GridModel grid = make_grid(8);  // N = 64, exhaustive divisors
    for (std::int64_t r = 1; r <= grid.N; ++r) {
        if (grid.N % r != 0) continue;
        const FiniteSignal got = fourier(dirac_comb(grid, r));
        // Geometric sum of unit roots: sum_{q<N/r} e^{-2 pi i q r (m-c) / N},
        // evaluated directly.
        FiniteSignal expected = zeros(grid);
        for (std::int64_t m = 0; m < grid.N; ++m) {
            cplx acc(0.0, 0.0);
            for (std::int64_t q = 0; q < grid.N / r; ++q) {
                const std::int64_t k = ((q * r * (m - grid.center)) % grid.N + grid.N) % grid.N;
                acc += std::polar(1.0, -2.0 * std::numbers::pi *
                                           static_cast<double>(k) /
                                           static_cast<double>(grid.N));
            }
            expected[m] = acc;
        }
        const double amp = static_cast<double>(grid.N / r);
        b.check("dual-comb/r" + std::to_string(r), max_abs_diff(got, expected) / amp,
                1e-12);
        // Support check: the oracle is exactly (beta/r) * dirac_comb(N/r).
        const FiniteSignal dual =
            cplx(grid.beta / static_cast<double>(r), 0.0) * dirac_comb(grid, grid.N / r);
        b.check("dual-comb-closed-form/r" + std::to_string(r),
                max_abs_diff(got, dual) / amp, 1e-12);
    }
}

void suite_sampling(Battery& b) {
    const GridModel grid = make_grid(8);  // N = 64
    std::mt19937_64 rng(b.cfg().seed ^ 0x5a);
    const FiniteSignal f = random_smooth(grid, rng);

    double worst_comm = 0.0;
    for (std::int64_t rp = 1; rp <= grid.N; ++rp) {
        if (grid.N % rp != 0) continue;
        for (std::int64_t rs = 1; rs <= rp; ++rs) {
            if (rp % rs != 0 || grid.N % rs != 0) continue;
            const FiniteSignal lhs = sample(periodize(f, rp), rs);
            const FiniteSignal rhs = periodize(sample(f, rs), rp);
            worst_comm = std::max(worst_comm, max_abs_diff(lhs, rhs));
        }
    }
    b.check("periodize-sample-commutation/N64", worst_comm, 1e-13);

    double worst_dual = 0.0;
    for (std::int64_t r = 1; r <= grid.N; ++r) {
        if (grid.N % r != 0) continue;
        const FiniteSignal lhs = fourier(sample(f, r));
        const FiniteSignal rhs =
            cplx(1.0 / static_cast<double>(r), 0.0) * periodize(fourier(f), grid.N / r);
        worst_dual = std::max(worst_dual, rel_max_diff(lhs, rhs));
    }
    b.check("fourier-sample-periodize-duality/N64", worst_dual, 1e-10);
}

void suite_convolution(Battery& b) {
    const GridModel grid = make_grid(16);  // N = 256
    std::mt19937_64 rng(b.cfg().seed ^ 0xc0);
    double worst_fwd = 0.0;
    double worst_bwd = 0.0;
    for (int i = 0; i < 50; ++i) {
        const FiniteSignal f = i % 2 == 0 ? random_smooth(grid, rng) : random_rough(grid, rng);
        const FiniteSignal h = random_smooth(grid, rng);
        worst_fwd = std::max(
            worst_fwd, rel_max_diff(fourier(convolve(f, h)), multiply(fourier(f), fourier(h))));
        worst_bwd = std::max(
            worst_bwd, rel_max_diff(fourier(multiply(f, h)), convolve(fourier(f), fourier(h))));
    }
    b.check("convolution-theorem/N256", worst_fwd, 1e-10);
    b.check("multiplication-theorem/N256", worst_bwd, 1e-10);
}

void suite_gabor(Battery& b) {
    const GridModel grid = make_grid(16);  // N = 256
    GaborSystem sys = make_gabor_system(gaussian(grid), 8, 16);  // redundancy 2
    const FiniteSignal dual = dual_window(sys);
    const double residual = norm_l2(frame_operator(sys, dual) - sys.window) /
                            norm_l2(sys.window);
    b.check("dual-window-residual/N256", residual, 1e-12);

    std::mt19937_64 rng(b.cfg().seed ^ 0x9a);
    double worst_rec = 0.0;
    for (int i = 0; i < 3; ++i) {
        const FiniteSignal f = random_smooth(grid, rng);
        const FiniteSignal rec = gabor_synthesis(gabor_analysis(f, sys, true), sys, false);
        worst_rec = std::max(worst_rec, rel_max_diff(rec, f));
    }
    b.check("analysis-synthesis-reconstruction/N256", worst_rec, 1e-8);

    const FiniteSignal f = gaussian(grid);
    double prev = gabor_partial_sum_tail(f, sys, {});
    double monotonicity_violation = 0.0;
    double final_tail = prev;
    for (double radius = 0.0; radius <= grid.beta / 2.0; radius += 1.0) {
        const double tail = gabor_partial_sum_tail(f, sys, lattice_box(sys, radius));
        monotonicity_violation = std::max(monotonicity_violation, tail - prev);
        prev = tail;
        final_tail = tail;
    }
    b.check("partial-sum-tail-nonincreasing/N256", monotonicity_violation, 1e-12);
    b.check("partial-sum-tail-full-lattice/N256", final_tail, 1e-6);

    // Critical sampling: the Gaussian system is numerically not a frame.
    bool flagged = false;
    double crit_residual = 0.0;
    try {
        GaborSystem critical = make_gabor_system(gaussian(grid), 16, 16);
        dual_window(critical);
    } catch (const NotAFrameError& e) {
        flagged = true;
        crit_residual = e.residual;
    }
    char detail[128];
    const FrameBounds fb = frame_bounds(make_gabor_system(gaussian(make_grid(8)), 8, 8));
    std::snprintf(detail, sizeof(detail),
                  "residual %.3e; N=64 critical condition number %.3e", crit_residual,
                  fb.condition());
    b.check("redundancy-one-flagged", flagged ? 0.0 : 1.0, 0.5, detail);
}

void suite_atomic(Battery& b) {
    const GridModel grid = make_grid(16);  // N = 256
    const Bupu bupu = make_bupu(grid, 16);
    std::mt19937_64 rng(b.cfg().seed ^ 0xa7);
    double worst_rec = 0.0;
    bool norms_finite = true;
    for (int i = 0; i < 10; ++i) {
        const FiniteSignal f = random_smooth(grid, rng);
        const AtomicDecomposition dec = atomic_decompose(f, bupu);
        worst_rec = std::max(worst_rec,
                             dec.reconstruction_error / std::max(max_abs(f), 1e-300));
        norms_finite = norms_finite && std::isfinite(dec.norm_sum);
    }
    b.check("reconstruction/N256-w16", worst_rec, 1e-10);

    const FiniteSignal f = gaussian(grid);
    const AtomicDecomposition dec = atomic_decompose(f, bupu);
    const double ratio = dec.norm_sum / s0_norm(f, gaussian(grid));
    char detail[128];
    std::snprintf(detail, sizeof(detail), "norm_sum %.6f, norm_sum/s0_norm(f) = %.3f",
                  dec.norm_sum, ratio);
    b.check("norm-sum-finite/N256-w16",
            (std::isfinite(dec.norm_sum) && norms_finite) ? 0.0 : 1.0, 0.5, detail);
}

void suite_mild(Battery& b) {
    const GridModel grid = make_grid(32);
    const FiniteSignal g = gaussian(grid);
    std::mt19937_64 rng(b.cfg().seed ^ 0x3d);
    const FiniteSignal f = random_smooth(grid, rng);
    const FiniteSignal h = random_smooth(grid, rng);
    const double sop = sop_norm(f - h, g);
    double violation = 0.0;
    for (double R : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        violation = std::max(violation, mild_distance(f, h, g, R) - sop);
    }
    b.check("mild-distance-below-sop/L32", violation, 0.0);

    // alpha * comb_alpha -> 1: the Riemann-normalized comb sequence.
    const FiniteSignal one = constant(grid, cplx(1.0, 0.0));
    std::vector<double> devs;
    for (std::int64_t r : {grid.L, grid.L / 2, grid.L / 4, std::int64_t{1}}) {
        const FiniteSignal sigma =
            cplx(static_cast<double>(r) * grid.alpha, 0.0) * dirac_comb(grid, r);
        devs.push_back(mild_distance(sigma, one, g, 2.0));
    }
    double strictness = 0.0;
    for (std::size_t i = 1; i < devs.size(); ++i) {
        strictness = std::max(strictness, devs[i] - devs[i - 1]);  // must be < 0
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "deviations at R=2: %.6e %.6e %.6e %.6e",
                  devs[0], devs[1], devs[2], devs[3]);
    b.check("comb-sequence-strictly-decreasing/L32",
            strictness < 0.0 ? 0.0 : 1.0, 0.5, detail);
}

void suite_figure1(Battery& b) {
    DemoConfig cfg;  // defaults: L = 32, r_p = N/4, r_s = 4
    const Figure1Result res = figure1_panels(cfg);
    b.check("central-region-agreement", res.central_agreement, 1e-3);
    b.check("periodized-time-replica", res.periodized_replica_peak >= 0.2 ? 0.0 : 1.0,
            0.5, "peak ratio " + std::to_string(res.periodized_replica_peak));
    b.check("sampled-frequency-replica", res.sampled_replica_peak >= 0.2 ? 0.0 : 1.0,
            0.5, "peak ratio " + std::to_string(res.sampled_replica_peak));
}

void suite_shannon(Battery& b) {
    const GridModel grid = make_grid(32);  // N = 1024
    const std::int64_t band = 20;
    // Band-limited test signal: Gaussian spectrum truncated to the band.
    FiniteSignal spec = fourier(gaussian(grid));
    for (std::int64_t m = 0; m < grid.N; ++m) {
        if (std::abs(m - grid.center) > band) spec[m] = cplx(0.0, 0.0);
    }
    const FiniteSignal f = inverse_fourier(spec);

    const FiniteSignal recovered = shannon_reconstruct(sample(f, 8), 8, band);
    b.check("oversampled-recovery-box/N1024", rel_max_diff(recovered, f), 1e-10);
    const FiniteSignal recovered_plateau =
        shannon_reconstruct(sample(f, 8), 8, band, BandFilter::plateau);
    b.check("oversampled-recovery-plateau/N1024", rel_max_diff(recovered_plateau, f), 1e-10);

    bool raised = false;
    std::int64_t overlap = 0;
    try {
        shannon_reconstruct(sample(f, 64), 64, band);
    } catch (const AliasingError& e) {
        raised = true;
        overlap = e.overlap_count;
    }
    b.check("undersampled-aliasing-error/N1024", raised ? 0.0 : 1.0, 0.5,
            "overlap count " + std::to_string(overlap));

    const FiniteSignal dc = constant(grid, cplx(0.5, 0.0));
    const FiniteSignal dc_rec = shannon_reconstruct(sample(dc, 256), 256, 0);
    b.check("dc-any-stride/N1024", rel_max_diff(dc_rec, dc), 1e-12);
}

void suite_gsp(Battery& b) {
    const GridModel grid = make_grid(8);  // N = 64
    const std::uint64_t seed = b.cfg().seed;

    // Spectral autocorrelation identity for all three covariance kinds.
    const CovarianceSpec white = CovarianceSpec::white(grid, 1.0);
    FiniteSignal symbol = zeros(grid);
    for (std::int64_t n = 0; n < grid.N; ++n) {
        const double s = grid.coord(n);
        symbol[n] = cplx(1.0 + std::exp(-s * s), 0.0);
    }
    const CovarianceSpec stationary = CovarianceSpec::stationary(symbol);
    std::mt19937_64 rng(seed ^ 0x6e);
    Eigen::MatrixXcd base = Eigen::MatrixXcd::Zero(grid.N, grid.N);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::int64_t i = 0; i < grid.N; ++i) {
        for (std::int64_t j = 0; j < grid.N; ++j) {
            base(i, j) = cplx(u(rng), u(rng));
        }
    }
    const Eigen::MatrixXcd psd = base * base.adjoint() / static_cast<double>(grid.N);
    const CovarianceSpec general = CovarianceSpec::general(grid, psd);

    b.check("spectral-identity-white/N64",
            spectral_autocorr_identity(simulate(white, 8, seed)), 1e-10);
    b.check("spectral-identity-stationary/N64",
            spectral_autocorr_identity(simulate(stationary, 8, seed + 1)), 1e-10);
    b.check("spectral-identity-general/N64",
            spectral_autocorr_identity(simulate(general, 8, seed + 2)), 1e-10);

    // WSS diagnostics on the exact circulant covariance.
    const WssDeviation exact = wss_deviation(exact_covariance(stationary));
    b.check("wss-exact-circulant-diag/N64", exact.diag_invariance, 1e-12);
    b.check("wss-exact-circulant-offdiag/N64", exact.offdiag_mass, 1e-12);

    // Monte Carlo white noise concentration.
    const std::int64_t M = 4096;
    const WssDeviation mc = wss_deviation(autocorrelation(simulate(white, M, seed + 3)));
    b.check("wss-monte-carlo-offdiag/M4096", mc.offdiag_mass,
            10.0 / std::sqrt(static_cast<double>(M)));

    // Estimator consistency: error halves (+-50%) when M quadruples.
    const Autocorrelation target = exact_covariance(general);
    const double err1 =
        (autocorrelation(simulate(general, 1024, seed + 4)).matrix - target.matrix).norm();
    const double err2 =
        (autocorrelation(simulate(general, 4096, seed + 5)).matrix - target.matrix).norm();
    const double ratio = err1 / err2;
    const bool in_band = ratio >= 1.0 && ratio <= 3.0;
    b.check("estimator-rate/M1024-vs-M4096", in_band ? 0.0 : 1.0, 0.5,
            "error ratio " + std::to_string(ratio) + " (expected 2 +- 50%)");
}

using SuiteFn = std::function<void(Battery&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> reg = {
        {"poisson", suite_poisson},       {"fourier", suite_fourier},
        {"comb", suite_comb},             {"sampling", suite_sampling},
        {"convolution", suite_convolution}, {"gabor", suite_gabor},
        {"atomic", suite_atomic},         {"mild", suite_mild},
        {"figure1", suite_figure1},       {"shannon", suite_shannon},
        {"gsp", suite_gsp},
    };
    return reg;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

std::vector<CheckResult> run_checks(const std::string& suite, const VerifyConfig& cfg) {
    std::vector<CheckResult> results;
    bool matched = false;
    for (const auto& [name, fn] : registry()) {
        if (suite != "all" && suite != name) continue;
        matched = true;
        Battery b(name, cfg, results);
        fn(b);
    }
    if (!matched) {
        throw std::invalid_argument("unknown suite '" + suite + "'");
    }
    return results;
}

}  // namespace mildtf
