#include "mildtf/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mildtf {

GridModel make_grid(std::int64_t L) {
    if (L < 2) {
        throw std::invalid_argument("make_grid: L must be >= 2");
    }
    // N = L^2 and N*N index products must stay exact in int64.
    constexpr std::int64_t kMaxL = 1'000'000;
    if (L > kMaxL) {
        throw std::invalid_argument("make_grid: L too large, N = L^2 would overflow");
    }
    GridModel g;
    g.L = L;
    g.N = L * L;
    g.alpha = 1.0 / static_cast<double>(L);
    g.beta = static_cast<double>(L);
    g.center = g.N / 2;
    return g;
}

FiniteSignal zeros(const GridModel& grid) {
    return FiniteSignal{grid, std::vector<cplx>(static_cast<std::size_t>(grid.N))};
}

FiniteSignal constant(const GridModel& grid, cplx value) {
    return FiniteSignal{grid, std::vector<cplx>(static_cast<std::size_t>(grid.N), value)};
}

FiniteSignal dirac(const GridModel& grid, std::int64_t k) {
    if (k < 0 || k >= grid.N) {
        throw std::invalid_argument("dirac: index out of range");
    }
    FiniteSignal f = zeros(grid);
    f[k] = cplx(1.0 / grid.alpha, 0.0);
    return f;
}

FiniteSignal dirac_comb(const GridModel& grid, std::int64_t r) {
    detail::require_stride(grid, r);
    FiniteSignal f = zeros(grid);
    const double amp = 1.0 / grid.alpha;
    for (std::int64_t q = 0; q < grid.N / r; ++q) {
        f[grid.wrap(grid.center + q * r)] = cplx(amp, 0.0);
    }
    return f;
}

FiniteSignal gaussian(const GridModel& grid) {
    FiniteSignal f = zeros(grid);
    constexpr int kWraps = 8;
    for (std::int64_t n = 0; n < grid.N; ++n) {
        const double t = grid.coord(n);
        double v = 0.0;
        // Sum outermost wraps first so the tiny terms are not absorbed late.
        for (int j = kWraps; j >= 1; --j) {
            const double tp = t + j * grid.beta;
            const double tm = t - j * grid.beta;
            v += std::exp(-std::numbers::pi * tp * tp);
            v += std::exp(-std::numbers::pi * tm * tm);
        }
        v += std::exp(-std::numbers::pi * t * t);
        f[n] = cplx(v, 0.0);
    }
    return f;
}

FiniteSignal tf_shift(const FiniteSignal& f, TFPoint lambda) {
    const GridModel& g = f.grid;
    const std::int64_t t = g.wrap(lambda.t_idx);
    const std::int64_t s = g.wrap(lambda.s_idx);
    FiniteSignal out = zeros(g);
    const double w = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(g.N);
    for (std::int64_t n = 0; n < g.N; ++n) {
        const cplx phase = std::polar(1.0, w * static_cast<double>(n - g.center));
        out[n] = phase * f[g.wrap(n - t)];
    }
    return out;
}

FiniteSignal translate(const FiniteSignal& f, std::int64_t t) {
    const GridModel& g = f.grid;
    const std::int64_t tw = g.wrap(t);
    FiniteSignal out = zeros(g);
    for (std::int64_t n = 0; n < g.N; ++n) {
        out[n] = f[g.wrap(n - tw)];
    }
    return out;
}

FiniteSignal reflect(const FiniteSignal& f) {
    const GridModel& g = f.grid;
    FiniteSignal out = zeros(g);
    for (std::int64_t n = 0; n < g.N; ++n) {
        out[n] = f[g.wrap(2 * g.center - n)];
    }
    return out;
}

cplx inner(const FiniteSignal& f, const FiniteSignal& h) {
    detail::require_same_grid(f, h);
    cplx acc(0.0, 0.0);
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        acc += f[n] * std::conj(h[n]);
    }
    return f.grid.alpha * acc;
}

cplx pairing(const FiniteSignal& sigma, const FiniteSignal& f) {
    detail::require_same_grid(sigma, f);
    cplx acc(0.0, 0.0);
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        acc += sigma[n] * f[n];
    }
    return f.grid.alpha * acc;
}

double norm_l2(const FiniteSignal& f) {
    double acc = 0.0;
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        acc += std::norm(f[n]);
    }
    return std::sqrt(f.grid.alpha * acc);
}

double norm_l1(const FiniteSignal& f) {
    double acc = 0.0;
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        acc += std::abs(f[n]);
    }
    return f.grid.alpha * acc;
}

double max_abs(const FiniteSignal& f) {
    double m = 0.0;
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        m = std::max(m, std::abs(f[n]));
    }
    return m;
}

double max_abs_diff(const FiniteSignal& f, const FiniteSignal& h) {
    detail::require_same_grid(f, h);
    double m = 0.0;
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        m = std::max(m, std::abs(f[n] - h[n]));
    }
    return m;
}

bool all_finite(const FiniteSignal& f) {
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        if (!std::isfinite(f[n].real()) || !std::isfinite(f[n].imag())) {
            return false;
        }
    }
    return true;
}

FiniteSignal operator+(const FiniteSignal& f, const FiniteSignal& h) {
    detail::require_same_grid(f, h);
    FiniteSignal out = f;
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        out[n] += h[n];
    }
    return out;
}

FiniteSignal operator-(const FiniteSignal& f, const FiniteSignal& h) {
    detail::require_same_grid(f, h);
    FiniteSignal out = f;
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        out[n] -= h[n];
    }
    return out;
}

FiniteSignal operator*(cplx scale, const FiniteSignal& f) {
    FiniteSignal out = f;
    for (std::int64_t n = 0; n < f.grid.N; ++n) {
        out[n] *= scale;
    }
    return out;
}

namespace detail {

void require_same_grid(const FiniteSignal& f, const FiniteSignal& h) {
    if (!(f.grid == h.grid)) {
        throw std::invalid_argument("signals live on different grids");
    }
}

void require_stride(const GridModel& grid, std::int64_t r) {
    if (r < 1 || grid.N % r != 0) {
        throw std::invalid_argument("stride must divide N");
    }
}

}  // namespace detail

}  // namespace mildtf
