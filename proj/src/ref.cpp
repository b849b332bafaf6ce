#include "mildtf/ref.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mildtf::ref {

namespace {

// exp(-2 pi i k / N) with k reduced mod N first, so the angle stays small
// and the kernel is evaluated accurately for large index products.
cplx unit_root(std::int64_t k, std::int64_t N) {
    std::int64_t r = k % N;
    if (r < 0) r += N;
    return std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) /
                               static_cast<double>(N));
}

FiniteSignal dense_transform(const FiniteSignal& f, std::int64_t sign) {
    const GridModel& g = f.grid;
    FiniteSignal out = zeros(g);
    for (std::int64_t m = 0; m < g.N; ++m) {
        cplx acc(0.0, 0.0);
        for (std::int64_t n = 0; n < g.N; ++n) {
            acc += f[n] * unit_root(sign * (n - g.center) * (m - g.center), g.N);
        }
        out[m] = g.alpha * acc;
    }
    return out;
}

}  // namespace

FiniteSignal fourier(const FiniteSignal& f) { return dense_transform(f, +1); }

FiniteSignal inverse_fourier(const FiniteSignal& f) { return dense_transform(f, -1); }

cplx stft_entry(const FiniteSignal& f, const FiniteSignal& g, TFPoint lambda) {
    const GridModel& grid = f.grid;
    const std::int64_t t = grid.wrap(lambda.t_idx);
    const std::int64_t s = grid.wrap(lambda.s_idx);
    cplx acc(0.0, 0.0);
    for (std::int64_t n = 0; n < grid.N; ++n) {
        acc += f[n] * std::conj(g[grid.wrap(n - t)]) *
               unit_root(s * (n - grid.center), grid.N);
    }
    return grid.alpha * acc;
}

STFTMap stft(const FiniteSignal& f, const FiniteSignal& g) {
    detail::require_same_grid(f, g);
    if (max_abs(g) == 0.0) {
        throw std::invalid_argument("ref::stft: zero window");
    }
    const GridModel& grid = f.grid;
    STFTMap map;
    map.grid = grid;
    map.window_id = window_id_of(g);
    map.values.resize(static_cast<std::size_t>(grid.N) * static_cast<std::size_t>(grid.N));
    for (std::int64_t t = 0; t < grid.N; ++t) {
        for (std::int64_t s = 0; s < grid.N; ++s) {
            map.values[static_cast<std::size_t>(t * grid.N + s)] =
                stft_entry(f, g, TFPoint{t, s});
        }
    }
    return map;
}

}  // namespace mildtf::ref
