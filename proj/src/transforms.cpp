#include "mildtf/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>

namespace mildtf {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// One FFTW plan per transform call, executed against per-thread buffers via
// the new-array interface. Plans are created FFTW_UNALIGNED so any buffer
// is acceptable; the planner itself is not thread-safe and is serialized.
class FftPlan {
public:
    FftPlan(std::int64_t n, int sign) : n_(n) {
        std::vector<cplx> probe(static_cast<std::size_t>(n));
        auto* p = reinterpret_cast<fftw_complex*>(probe.data());
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan_ == nullptr) {
            throw std::runtime_error("fftw_plan_dft_1d failed");
        }
    }

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    ~FftPlan() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }

    // Thread-safe for distinct buffers.
    void execute(cplx* in, cplx* out) const {
        fftw_execute_dft(plan_, reinterpret_cast<fftw_complex*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    }

    std::int64_t size() const { return n_; }

private:
    std::int64_t n_;
    fftw_plan plan_;
};

// Rotate so index `center` lands at 0; the centered kernel then becomes the
// plain DFT kernel in the rotated index.
void rotate_from_center(const GridModel& g, const cplx* in, cplx* out) {
    for (std::int64_t k = 0; k < g.N; ++k) {
        out[k] = in[g.wrap(k + g.center)];
    }
}

void rotate_to_center(const GridModel& g, const cplx* in, cplx* out) {
    for (std::int64_t m = 0; m < g.N; ++m) {
        out[m] = in[g.wrap(m - g.center)];
    }
}

FiniteSignal centered_transform(const FiniteSignal& f, int sign) {
    const GridModel& g = f.grid;
    FftPlan plan(g.N, sign);
    std::vector<cplx> buf(static_cast<std::size_t>(g.N));
    std::vector<cplx> spec(static_cast<std::size_t>(g.N));
    rotate_from_center(g, f.values.data(), buf.data());
    plan.execute(buf.data(), spec.data());
    FiniteSignal out = zeros(g);
    rotate_to_center(g, spec.data(), out.values.data());
    for (std::int64_t m = 0; m < g.N; ++m) {
        out[m] *= g.alpha;
    }
    return out;
}

}  // namespace

FiniteSignal fourier(const FiniteSignal& f) {
    return centered_transform(f, FFTW_FORWARD);
}

FiniteSignal inverse_fourier(const FiniteSignal& f) {
    return centered_transform(f, FFTW_BACKWARD);
}

double STFTMap::magnitude_max() const {
    double m = 0.0;
    for (const cplx& v : values) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

std::string window_id_of(const FiniteSignal& g) {
    // FNV-1a over the raw bytes; identification only.
    std::uint64_t h = 1469598103934665603ull;
    const auto* bytes = reinterpret_cast<const unsigned char*>(g.values.data());
    const std::size_t n = g.values.size() * sizeof(cplx);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "w%016llx", static_cast<unsigned long long>(h));
    return buf;
}

STFTMap stft(const FiniteSignal& f, const FiniteSignal& g) {
    detail::require_same_grid(f, g);
    if (max_abs(g) == 0.0) {
        throw std::invalid_argument("stft: zero window");
    }
    const GridModel& grid = f.grid;
    if (grid.N > kMaxStftN) {
        throw std::invalid_argument("stft: N exceeds the full-map memory cap");
    }
    const std::int64_t N = grid.N;

    STFTMap map;
    map.grid = grid;
    map.window_id = window_id_of(g);
    map.values.resize(static_cast<std::size_t>(N) * static_cast<std::size_t>(N));

    FftPlan plan(N, FFTW_FORWARD);

    // V(t, s) = alpha * DFT(rotated windowed product)[s]; each time shift t
    // is an independent column.
#pragma omp parallel
    {
        std::vector<cplx> win(static_cast<std::size_t>(N));
        std::vector<cplx> buf(static_cast<std::size_t>(N));
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < N; ++t) {
            for (std::int64_t k = 0; k < N; ++k) {
                // rotated index: n = k + center
                const std::int64_t n = grid.wrap(k + grid.center);
                win[k] = f[n] * std::conj(g[grid.wrap(n - t)]);
            }
            plan.execute(win.data(), buf.data());
            cplx* row = map.values.data() + t * N;
            for (std::int64_t s = 0; s < N; ++s) {
                row[s] = grid.alpha * buf[s];
            }
        }
    }
    return map;
}

FiniteSignal convolve(const FiniteSignal& f, const FiniteSignal& h) {
    detail::require_same_grid(f, h);
    const GridModel& g = f.grid;
    const std::int64_t N = g.N;
    FiniteSignal out = zeros(g);
    // Direct sum, kept independent of the transform path so the convolution
    // theorem is a real cross-check. Output indices are independent.
    cplx* o = out.values.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t n = 0; n < N; ++n) {
        cplx acc(0.0, 0.0);
        for (std::int64_t k = 0; k < N; ++k) {
            acc += f[k] * h[g.wrap(n - k + g.center)];
        }
        o[n] = g.alpha * acc;
    }
    return out;
}

FiniteSignal multiply(const FiniteSignal& f, const FiniteSignal& h) {
    detail::require_same_grid(f, h);
    FiniteSignal out = f;
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        out[n] *= h[n];
    }
    return out;
}

}  // namespace mildtf
