#include "mildtf/gabor.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mildtf/errors.hpp"

namespace mildtf {

namespace {

// pi(lambda) g evaluated at grid index n for lattice point (t, s).
inline cplx shifted_window_value(const GridModel& g, const FiniteSignal& win,
                                 std::int64_t t, std::int64_t s, std::int64_t n) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(s) /
                     static_cast<double>(g.N);
    return std::polar(1.0, w * static_cast<double>(n - g.center)) * win[g.wrap(n - t)];
}

// c(lambda) = inner(f, pi(lambda) g) for every lattice point; independent
// entries, fixed per-entry summation order.
void analysis_into(const FiniteSignal& f, const FiniteSignal& win,
                   std::int64_t a, std::int64_t b, cplx* out) {
    const GridModel& g = f.grid;
    const std::int64_t nt = g.N / a;
    const std::int64_t ns = g.N / b;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < nt * ns; ++i) {
        const std::int64_t t = (i / ns) * a;
        const std::int64_t s = (i % ns) * b;
        cplx acc(0.0, 0.0);
        for (std::int64_t n = 0; n < g.N; ++n) {
            acc += f[n] * std::conj(shifted_window_value(g, win, t, s, n));
        }
        out[i] = g.alpha * acc;
    }
}

// sum_lambda c(lambda) pi(lambda) g; parallel over output samples so the
// lattice summation order per sample is fixed.
FiniteSignal synthesis_from(const cplx* c, const FiniteSignal& win,
                            std::int64_t a, std::int64_t b) {
    const GridModel& g = win.grid;
    const std::int64_t nt = g.N / a;
    const std::int64_t ns = g.N / b;
    FiniteSignal out = zeros(g);
    cplx* o = out.values.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t n = 0; n < g.N; ++n) {
        cplx acc(0.0, 0.0);
        for (std::int64_t i = 0; i < nt * ns; ++i) {
            const std::int64_t t = (i / ns) * a;
            const std::int64_t s = (i % ns) * b;
            acc += c[i] * shifted_window_value(g, win, t, s, n);
        }
        o[n] = acc;
    }
    return out;
}

// Frame-condition probe: a candidate dual must reproduce arbitrary signals
// through analysis-with-dual / synthesis-with-window. A numerically singular
// frame operator passes the CG residual test when the window itself avoids
// the bad eigenspace, but random probes do not.
double dual_probe_residual(const GaborSystem& sys, const FiniteSignal& candidate) {
    const GridModel& g = sys.grid;
    const std::int64_t nc = sys.time_steps() * sys.freq_steps();
    std::vector<cplx> c(static_cast<std::size_t>(nc));
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(g.N));
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int probe = 0; probe < 2; ++probe) {
        FiniteSignal f = zeros(g);
        for (std::int64_t n = 0; n < g.N; ++n) {
            f[n] = cplx(u(rng), u(rng));
        }
        analysis_into(f, candidate, sys.a, sys.b, c.data());
        const FiniteSignal rec = synthesis_from(c.data(), sys.window, sys.a, sys.b);
        worst = std::max(worst, norm_l2(rec - f) / norm_l2(f));
    }
    return worst;
}

Eigen::MatrixXcd dense_frame_matrix(const GaborSystem& sys) {
    const GridModel& g = sys.grid;
    const std::int64_t N = g.N;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, N);
    // S = alpha * sum_lambda (pi(lambda) g)(pi(lambda) g)^H
    for (std::int64_t t = 0; t < N; t += sys.a) {
        for (std::int64_t s = 0; s < N; s += sys.b) {
            Eigen::VectorXcd v(N);
            for (std::int64_t n = 0; n < N; ++n) {
                v(n) = shifted_window_value(g, sys.window, t, s, n);
            }
            S.noalias() += v * v.adjoint();
        }
    }
    return g.alpha * S;
}

}  // namespace

GaborSystem make_gabor_system(FiniteSignal window, std::int64_t a, std::int64_t b) {
    const GridModel& g = window.grid;
    detail::require_stride(g, a);
    detail::require_stride(g, b);
    if (a * b > g.N) {
        throw std::invalid_argument("make_gabor_system: redundancy N/(a*b) must be >= 1");
    }
    if (max_abs(window) == 0.0) {
        throw std::invalid_argument("make_gabor_system: zero window");
    }
    return GaborSystem{g, std::move(window), a, b, std::nullopt};
}

std::vector<TFPoint> lattice_points(const GaborSystem& sys) {
    std::vector<TFPoint> pts;
    pts.reserve(static_cast<std::size_t>(sys.time_steps() * sys.freq_steps()));
    for (std::int64_t t = 0; t < sys.grid.N; t += sys.a) {
        for (std::int64_t s = 0; s < sys.grid.N; s += sys.b) {
            pts.push_back(TFPoint{t, s});
        }
    }
    return pts;
}

std::vector<TFPoint> lattice_box(const GaborSystem& sys, double radius) {
    std::vector<TFPoint> pts;
    for (const TFPoint& p : lattice_points(sys)) {
        const double t = sys.grid.shift_coord(p.t_idx);
        const double s = sys.grid.shift_coord(p.s_idx);
        if (std::max(std::abs(t), std::abs(s)) <= radius) {
            pts.push_back(p);
        }
    }
    return pts;
}

FiniteSignal frame_operator(const GaborSystem& sys, const FiniteSignal& f) {
    detail::require_same_grid(f, sys.window);
    const std::int64_t nc = sys.time_steps() * sys.freq_steps();
    std::vector<cplx> c(static_cast<std::size_t>(nc));
    analysis_into(f, sys.window, sys.a, sys.b, c.data());
    return synthesis_from(c.data(), sys.window, sys.a, sys.b);
}

GaborCoefficients gabor_analysis(const FiniteSignal& f, const GaborSystem& sys, bool use_dual) {
    detail::require_same_grid(f, sys.window);
    if (use_dual && !sys.dual) {
        throw std::invalid_argument("gabor_analysis: dual window not computed");
    }
    GaborCoefficients coeffs{sys.grid, sys.a, sys.b,
                             std::vector<cplx>(static_cast<std::size_t>(
                                 sys.time_steps() * sys.freq_steps()))};
    analysis_into(f, use_dual ? *sys.dual : sys.window, sys.a, sys.b, coeffs.c.data());
    return coeffs;
}

FiniteSignal gabor_synthesis(const GaborCoefficients& coeffs, const GaborSystem& sys, bool use_dual) {
    if (coeffs.a != sys.a || coeffs.b != sys.b || !(coeffs.grid == sys.grid)) {
        throw std::invalid_argument("gabor_synthesis: coefficient layout mismatch");
    }
    if (use_dual && !sys.dual) {
        throw std::invalid_argument("gabor_synthesis: dual window not computed");
    }
    return synthesis_from(coeffs.c.data(), use_dual ? *sys.dual : sys.window,
                          sys.a, sys.b);
}

FiniteSignal dual_window(GaborSystem& sys) {
    const GridModel& g = sys.grid;
    const FiniteSignal& target = sys.window;
    const double target_norm = norm_l2(target);
    const int max_iter = static_cast<int>(10 * g.N);

    // Conjugate gradients on the Hermitian positive semidefinite S.
    FiniteSignal x = zeros(g);
    FiniteSignal r = target;  // residual g - S x with x = 0
    FiniteSignal p = r;
    double rho = std::real(inner(r, r));
    double best_residual = std::sqrt(rho) / target_norm;
    int iterations = 0;

    while (best_residual > kDualResidualTol && iterations < max_iter) {
        FiniteSignal sp = frame_operator(sys, p);
        const double curvature = std::real(inner(sp, p));
        if (!(curvature > 0.0) || !std::isfinite(curvature)) {
            break;  // numerically singular direction
        }
        const double step = rho / curvature;
        for (std::int64_t n = 0; n < g.N; ++n) {
            x[n] += step * p[n];
            r[n] -= step * sp[n];
        }
        const double rho_next = std::real(inner(r, r));
        const double ratio = rho_next / rho;
        rho = rho_next;
        for (std::int64_t n = 0; n < g.N; ++n) {
            p[n] = r[n] + ratio * p[n];
        }
        best_residual = std::sqrt(rho) / target_norm;
        ++iterations;
    }

    if (best_residual > kDualResidualTol && g.N <= 1024) {
        // Dense fallback; the residual check below still decides.
        Eigen::MatrixXcd S = dense_frame_matrix(sys);
        Eigen::VectorXcd rhs(g.N);
        for (std::int64_t n = 0; n < g.N; ++n) rhs(n) = target[n];
        Eigen::VectorXcd sol = S.ldlt().solve(rhs);
        FiniteSignal xd = zeros(g);
        for (std::int64_t n = 0; n < g.N; ++n) xd[n] = sol(n);
        const double res = norm_l2(frame_operator(sys, xd) - target) / target_norm;
        if (res < best_residual) {
            best_residual = res;
            x = xd;
        }
    }

    if (best_residual > kDualResidualTol) {
        throw NotAFrameError(best_residual, iterations);
    }
    // The solve alone does not certify invertibility; require the candidate
    // to actually reproduce probe signals.
    const double probe = dual_probe_residual(sys, x);
    if (probe > kFrameProbeTol) {
        throw NotAFrameError(probe, iterations);
    }
    sys.dual = x;
    return x;
}

FrameBounds frame_bounds(const GaborSystem& sys) {
    if (sys.grid.N > 1024) {
        throw std::invalid_argument("frame_bounds: dense eigensolve capped at N <= 1024");
    }
    Eigen::MatrixXcd S = dense_frame_matrix(sys);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S, Eigen::EigenvaluesOnly);
    return FrameBounds{es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

}  // namespace mildtf
