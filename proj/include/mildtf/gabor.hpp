#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "mildtf/grid.hpp"

namespace mildtf {

/// Gabor system: window g and the separable lattice
/// Lambda = { (t, s) : t in a*Z, s in b*Z } with a | N and b | N.
/// `dual` holds the canonical dual window once dual_window() has run.
struct GaborSystem {
    GridModel grid;
    FiniteSignal window;
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::optional<FiniteSignal> dual;

    std::int64_t time_steps() const { return grid.N / a; }
    std::int64_t freq_steps() const { return grid.N / b; }
    double redundancy() const {
        return static_cast<double>(grid.N) / static_cast<double>(a * b);
    }
};

/// Validates the strides and redundancy >= 1.
GaborSystem make_gabor_system(FiniteSignal window, std::int64_t a, std::int64_t b);

/// All lattice points, time-major order.
std::vector<TFPoint> lattice_points(const GaborSystem& sys);

/// Lattice points whose wrapped physical coordinates satisfy
/// max(|t|, |s|) <= radius.
std::vector<TFPoint> lattice_box(const GaborSystem& sys, double radius);

/// Coefficient map on the lattice, row-major time-major:
/// c[(t/a) * (N/b) + (s/b)].
struct GaborCoefficients {
    GridModel grid;
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::vector<cplx> c;

    cplx& at(std::int64_t ti, std::int64_t si) { return c[static_cast<std::size_t>(ti * (grid.N / b) + si)]; }
    const cplx& at(std::int64_t ti, std::int64_t si) const { return c[static_cast<std::size_t>(ti * (grid.N / b) + si)]; }
};

/// Frame operator S f = sum_{lambda in Lambda} inner(f, pi(lambda) g) pi(lambda) g.
FiniteSignal frame_operator(const GaborSystem& sys, const FiniteSignal& f);

/// Analysis map c(lambda) = inner(f, pi(lambda) g~) when use_dual, else
/// against the window itself.
GaborCoefficients gabor_analysis(const FiniteSignal& f, const GaborSystem& sys, bool use_dual);

/// Synthesis sum_lambda c(lambda) pi(lambda) g (or g~ when use_dual).
FiniteSignal gabor_synthesis(const GaborCoefficients& coeffs, const GaborSystem& sys, bool use_dual);

inline constexpr double kDualResidualTol = 1e-12;
inline constexpr double kFrameProbeTol = 1e-8;

/// Canonical dual window g~ = S^{-1} g, solved by conjugate gradients to
/// relative residual 1e-12 (dense solve fallback for N <= 1024). The frame
/// condition itself is tested numerically: the candidate dual must
/// reproduce probe signals to kFrameProbeTol. Stores the result in
/// sys.dual and returns it; throws NotAFrameError otherwise.
FiniteSignal dual_window(GaborSystem& sys);

/// Extreme eigenvalues of the frame operator from a dense eigensolve
/// (N <= 1024); diagnostic for frame quality.
struct FrameBounds {
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;
    double condition() const {
        return min_eigenvalue > 0.0
                   ? max_eigenvalue / min_eigenvalue
                   : std::numeric_limits<double>::infinity();
    }
};

FrameBounds frame_bounds(const GaborSystem& sys);

}  // namespace mildtf
