#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace mildtf {

using cplx = std::complex<double>;

/// Finite model Z_N of the real line. N = L^2 grid points with sampling
/// step alpha = 1/L and period beta = N*alpha = L, so that N = beta/alpha
/// holds exactly and the frequency step equals the time step (self-dual
/// grid). Index `center` carries physical coordinate 0; coordinates live
/// in [-beta/2, beta/2).
struct GridModel {
    std::int64_t L = 0;
    std::int64_t N = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::int64_t center = 0;

    /// Physical coordinate of index n.
    double coord(std::int64_t n) const { return static_cast<double>(n - center) * alpha; }

    /// Reduce an arbitrary integer index into [0, N).
    std::int64_t wrap(std::int64_t n) const {
        std::int64_t m = n % N;
        return m < 0 ? m + N : m;
    }

    /// Interpret an index (shift amount, frequency bin, ...) as a signed
    /// offset in [-N/2, N/2).
    std::int64_t signed_offset(std::int64_t idx) const {
        std::int64_t m = wrap(idx + center) - center;
        return m;
    }

    /// Physical coordinate of a shift index (signed, wrapped).
    double shift_coord(std::int64_t idx) const {
        return static_cast<double>(signed_offset(idx)) * alpha;
    }

    friend bool operator==(const GridModel&, const GridModel&) = default;
};

/// Build the model for a given L >= 2. Throws std::invalid_argument for
/// L < 2 or L large enough that N = L^2 overflows the index type.
GridModel make_grid(std::int64_t L);

/// Point lambda = (t, s) on the discrete time-frequency plane; both
/// components are shift indices reduced mod N.
struct TFPoint {
    std::int64_t t_idx = 0;
    std::int64_t s_idx = 0;
};

/// Complex-valued sequence on a grid. Test functions, measures and mild
/// distributions are all represented this way; only the weights differ.
struct FiniteSignal {
    GridModel grid;
    std::vector<cplx> values;

    std::int64_t size() const { return grid.N; }
    cplx& operator[](std::int64_t n) { return values[static_cast<std::size_t>(n)]; }
    const cplx& operator[](std::int64_t n) const { return values[static_cast<std::size_t>(n)]; }
};

FiniteSignal zeros(const GridModel& grid);
FiniteSignal constant(const GridModel& grid, cplx value);

/// Unit point mass at index k: value 1/alpha at k, zero elsewhere, so that
/// inner(dirac(k), f) = f[k].
FiniteSignal dirac(const GridModel& grid, std::int64_t k);

/// Comb of unit point masses on the nodes (n - center) == 0 mod r.
/// Requires r | N; exactly N/r nodes, each of amplitude 1/alpha.
FiniteSignal dirac_comb(const GridModel& grid, std::int64_t r);

/// Periodized sample of exp(-pi t^2): values[n] = sum_j exp(-pi (t(n)+j*beta)^2).
/// The periodization (truncated at |j| <= 8, tail below 1e-16 already for
/// beta >= 2) is what makes the Fourier self-duality exact on this grid.
FiniteSignal gaussian(const GridModel& grid);

/// Time-frequency shift pi(lambda) = M_s T_t (modulation after translation):
/// result[n] = exp(2 pi i s (n-center)/N) * f[(n - t) mod N].
FiniteSignal tf_shift(const FiniteSignal& f, TFPoint lambda);

/// Pure translation, tf_shift with s = 0.
FiniteSignal translate(const FiniteSignal& f, std::int64_t t);

/// f-check: result[n] = f[(2*center - n) mod N].
FiniteSignal reflect(const FiniteSignal& f);

/// alpha-weighted inner product alpha * sum_n f[n] * conj(h[n]).
cplx inner(const FiniteSignal& f, const FiniteSignal& h);

/// Bilinear distribution pairing sigma(f) = alpha * sum_n sigma[n] * f[n]
/// (no conjugation).
cplx pairing(const FiniteSignal& sigma, const FiniteSignal& f);

/// sqrt(inner(f, f)).
double norm_l2(const FiniteSignal& f);

/// alpha * sum |f[n]|.
double norm_l1(const FiniteSignal& f);

double max_abs(const FiniteSignal& f);
double max_abs_diff(const FiniteSignal& f, const FiniteSignal& h);

/// True when every entry is finite (no NaN/Inf).
bool all_finite(const FiniteSignal& f);

FiniteSignal operator+(const FiniteSignal& f, const FiniteSignal& h);
FiniteSignal operator-(const FiniteSignal& f, const FiniteSignal& h);
FiniteSignal operator*(cplx scale, const FiniteSignal& f);

namespace detail {
/// Throws std::invalid_argument unless f and h live on the same grid.
void require_same_grid(const FiniteSignal& f, const FiniteSignal& h);
/// Throws std::invalid_argument unless r divides N.
void require_stride(const GridModel& grid, std::int64_t r);
}  // namespace detail

}  // namespace mildtf
