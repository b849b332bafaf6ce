#pragma once

#include <utility>
#include <vector>

#include "mildtf/gabor.hpp"
#include "mildtf/grid.hpp"
#include "mildtf/transforms.hpp"

namespace mildtf {

/// Discrete S0 norm: (1/N) * sum over the N x N TF grid of |V_g f|.
/// The 1/N is the TF cell measure alpha * alpha on the self-dual grid.
double s0_norm(const FiniteSignal& f, const FiniteSignal& g);

/// Discrete S0' proxy: max over the TF grid of |V_g f|.
double sop_norm(const FiniteSignal& f, const FiniteSignal& g);

/// Mild-convergence metric at radius R: max of |V_g(f - h)| over TF points
/// whose wrapped physical coordinates satisfy max(|t|, |s|) <= R.
/// R is clamped to beta/2. Always <= sop_norm(f - h, g).
double mild_distance(const FiniteSignal& f, const FiniteSignal& h,
                     const FiniteSignal& g, double R);

/// Per-radius deviations on the schedule R_m = m * beta / 8, m = 1..8
/// (clamped at beta/2), plus the aggregated convenience metric
/// sum_m 2^-m * min(1, dev(R_m)).
struct MildReport {
    std::vector<double> radius_schedule;
    std::vector<double> deviations;
    std::vector<bool> converged;
    double aggregated = 0.0;
};

MildReport mild_report(const FiniteSignal& f, const FiniteSignal& h,
                       const FiniteSignal& g, double tolerance);

/// result[n] = sum_{j=0}^{N/r-1} f[(n + j*r) mod N]; equals
/// convolve(dirac_comb(r), f) exactly.
FiniteSignal periodize(const FiniteSignal& f, std::int64_t r);

/// Keeps values on the comb nodes (n-c) == 0 mod r, zero elsewhere
/// (multiply by alpha * dirac_comb(r)).
FiniteSignal sample(const FiniteSignal& f, std::int64_t r);

/// Both sides of the Poisson summation identity: the signal summed over
/// integer physical coordinates and its Fourier transform summed the same
/// way. Exact on this grid for every signal.
struct PoissonCheck {
    cplx time_sum;
    cplx freq_sum;
    double deviation = 0.0;
};

PoissonCheck poisson_check(const FiniteSignal& f);

/// Riemann sum of g*f over the comb of stride r with physical step r*alpha:
/// (r*alpha) * sum_{nodes} g[node] * f[node].
cplx riemann_functional(const FiniteSignal& g, const FiniteSignal& f, std::int64_t r);

/// Bounded uniform partition of unity from translates of a triangular hat
/// psi of half-width w (w | N, 2w <= N) at stride w, plus the plateau tau
/// that is 1 on supp(psi) and decays linearly over width w on each side.
/// The translates of psi sum to exactly 1 on every grid point, and
/// tau * psi == psi exactly.
struct Bupu {
    GridModel grid;
    std::int64_t w = 0;
    FiniteSignal psi;
    FiniteSignal tau;
};

Bupu make_bupu(const GridModel& grid, std::int64_t w);

/// Double BUPU decomposition f = sum_{k,j} h_{k,j} with
/// h_{k,j} = T_{jw} psi * IFT(T_{kw} psi * FT(f)). Atoms with s0 norm
/// below 1e-14 are dropped (the threshold is recorded).
struct AtomicDecomposition {
    std::vector<FiniteSignal> atoms;
    std::vector<std::pair<std::int64_t, std::int64_t>> labels;  // (k, j)
    std::vector<double> norms;                                  // s0 norms
    double norm_sum = 0.0;
    double reconstruction_error = 0.0;
    double drop_threshold = 0.0;
};

AtomicDecomposition atomic_decompose(const FiniteSignal& f, const Bupu& bupu);

/// S0 norm of f minus the partial Gabor expansion over the finite set F,
/// with dual-window analysis coefficients: s0_norm(f - sum_{lambda in F}
/// inner(f, pi(lambda) g~) pi(lambda) g).
double gabor_partial_sum_tail(const FiniteSignal& f, const GaborSystem& sys,
                              const std::vector<TFPoint>& F);

/// Smallest centered lattice box such that every signal of the set has
/// partial-sum tail <= eps for that box and every larger one in the sweep.
/// empty == true means the empty set already suffices.
struct TfBox {
    bool empty = true;
    double radius = 0.0;
};

TfBox tf_tightness(const std::vector<FiniteSignal>& signals,
                   const GaborSystem& sys, double eps);

enum class BandFilter { box, plateau };

/// Recovers a band-limited signal from its stride-r samples:
/// r * IFT(indicator of the +-band window * FT(s)). Exact when the original
/// spectrum lives in the band and N/r >= 2*band + 1; otherwise throws
/// AliasingError carrying the number of aliased bins.
FiniteSignal shannon_reconstruct(const FiniteSignal& s, std::int64_t r,
                                 std::int64_t band,
                                 BandFilter filter = BandFilter::box);

}  // namespace mildtf
