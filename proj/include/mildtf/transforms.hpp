#pragma once

#include <string>

#include "mildtf/grid.hpp"

namespace mildtf {

/// Centered, continuum-normalized Fourier transform:
///   result[m] = alpha * sum_n f[n] * exp(-2 pi i (n-c)(m-c)/N).
/// On this grid the transform is unitary for the alpha-weighted inner
/// product, fourier∘fourier = reflect, and the periodized-sampled Gaussian
/// is a fixed point. Computed with an FFT after index rotation.
FiniteSignal fourier(const FiniteSignal& f);

/// Conjugate-kernel transform with the same alpha weight;
/// inverse_fourier(fourier(f)) = f.
FiniteSignal inverse_fourier(const FiniteSignal& f);

/// Full N x N short-time Fourier transform V_g f, entry (t, s) =
/// inner(f, tf_shift(g, (t, s))). Stored time-major: values[t*N + s].
struct STFTMap {
    GridModel grid;
    std::string window_id;
    std::vector<cplx> values;

    cplx at(std::int64_t t, std::int64_t s) const {
        return values[static_cast<std::size_t>(t * grid.N + s)];
    }
    double magnitude_max() const;
};

/// Maximum N for which the full N x N map is computed.
inline constexpr std::int64_t kMaxStftN = 4096;

/// Computes the full STFT as N windowed transforms, one per time shift.
/// The columns are independent and run in parallel. Throws for a zero
/// window, mismatched grids, or N > kMaxStftN.
STFTMap stft(const FiniteSignal& f, const FiniteSignal& g);

/// Short content hash identifying a window in exported metadata.
std::string window_id_of(const FiniteSignal& g);

/// alpha-weighted cyclic convolution, indices paired so that physical
/// coordinates add: result[n] = alpha * sum_k f[k] * h[(n-k+c) mod N].
/// dirac(center) is the identity; fourier maps it to multiply.
FiniteSignal convolve(const FiniteSignal& f, const FiniteSignal& h);

/// Entrywise product (no alpha weight); fourier maps it to convolve.
FiniteSignal multiply(const FiniteSignal& f, const FiniteSignal& h);

}  // namespace mildtf
