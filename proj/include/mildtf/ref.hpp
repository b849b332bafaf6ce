#pragma once

#include "mildtf/grid.hpp"
#include "mildtf/transforms.hpp"

namespace mildtf::ref {

// Serial reference implementations. Textbook loops, no FFT library, no
// parallelism; they define the expected values the fast kernels are tested
// against and serve as the baseline in the benchmark target.

/// O(N^2) centered transform evaluated term by term.
FiniteSignal fourier(const FiniteSignal& f);

/// O(N^2) conjugate-kernel inverse.
FiniteSignal inverse_fourier(const FiniteSignal& f);

/// O(N^3) STFT via direct inner products against shifted windows.
STFTMap stft(const FiniteSignal& f, const FiniteSignal& g);

/// Single STFT entry, same arithmetic as the full map.
cplx stft_entry(const FiniteSignal& f, const FiniteSignal& g, TFPoint lambda);

}  // namespace mildtf::ref
