#include "mildtf/mild.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mildtf/errors.hpp"

namespace mildtf {

double s0_norm(const FiniteSignal& f, const FiniteSignal& g) {
    const STFTMap map = stft(f, g);
    const std::int64_t N = f.grid.N;
    // Column sums in fixed order, then a fixed-order combine, so the result
    // does not depend on the thread partition.
    std::vector<double> col(static_cast<std::size_t>(N), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < N; ++t) {
        double acc = 0.0;
        const cplx* row = map.values.data() + t * N;
        for (std::int64_t s = 0; s < N; ++s) {
            acc += std::abs(row[s]);
        }
        col[static_cast<std::size_t>(t)] = acc;
    }
    double total = 0.0;
    for (double v : col) total += v;
    return total / static_cast<double>(N);
}

double sop_norm(const FiniteSignal& f, const FiniteSignal& g) {
    return stft(f, g).magnitude_max();
}

double mild_distance(const FiniteSignal& f, const FiniteSignal& h,
                     const FiniteSignal& g, double R) {
    if (!(R > 0.0)) {
        throw std::invalid_argument("mild_distance: R must be positive");
    }
    const GridModel& grid = f.grid;
    R = std::min(R, grid.beta / 2.0);
    const STFTMap map = stft(f - h, g);
    double m = 0.0;
    for (std::int64_t t = 0; t < grid.N; ++t) {
        if (std::abs(grid.shift_coord(t)) > R) continue;
        const cplx* row = map.values.data() + t * grid.N;
        for (std::int64_t s = 0; s < grid.N; ++s) {
            if (std::abs(grid.shift_coord(s)) > R) continue;
            m = std::max(m, std::abs(row[s]));
        }
    }
    return m;
}

MildReport mild_report(const FiniteSignal& f, const FiniteSignal& h,
                       const FiniteSignal& g, double tolerance) {
    const GridModel& grid = f.grid;
    const STFTMap map = stft(f - h, g);
    MildReport report;
    report.radius_schedule.reserve(8);
    for (int m = 1; m <= 8; ++m) {
        const double R = std::min(m * grid.beta / 8.0, grid.beta / 2.0);
        double dev = 0.0;
        for (std::int64_t t = 0; t < grid.N; ++t) {
            if (std::abs(grid.shift_coord(t)) > R) continue;
            const cplx* row = map.values.data() + t * grid.N;
            for (std::int64_t s = 0; s < grid.N; ++s) {
                if (std::abs(grid.shift_coord(s)) > R) continue;
                dev = std::max(dev, std::abs(row[s]));
            }
        }
        report.radius_schedule.push_back(R);
        report.deviations.push_back(dev);
        report.converged.push_back(dev <= tolerance);
        report.aggregated += std::ldexp(std::min(1.0, dev), -m);
    }
    return report;
}

FiniteSignal periodize(const FiniteSignal& f, std::int64_t r) {
    detail::require_stride(f.grid, r);
    const GridModel& g = f.grid;
    FiniteSignal out = zeros(g);
    const std::int64_t copies = g.N / r;
    for (std::int64_t n = 0; n < g.N; ++n) {
        cplx acc(0.0, 0.0);
        for (std::int64_t j = 0; j < copies; ++j) {
            acc += f[g.wrap(n + j * r)];
        }
        out[n] = acc;
    }
    return out;
}

FiniteSignal sample(const FiniteSignal& f, std::int64_t r) {
    detail::require_stride(f.grid, r);
    const GridModel& g = f.grid;
    FiniteSignal out = zeros(g);
    for (std::int64_t q = 0; q < g.N / r; ++q) {
        const std::int64_t n = g.wrap(g.center + q * r);
        out[n] = f[n];
    }
    return out;
}

PoissonCheck poisson_check(const FiniteSignal& f) {
    const GridModel& g = f.grid;
    const FiniteSignal fhat = fourier(f);
    // Integer physical coordinates are the comb nodes of stride L.
    cplx ts(0.0, 0.0);
    cplx fs(0.0, 0.0);
    for (std::int64_t q = 0; q < g.L; ++q) {
        const std::int64_t n = g.wrap(g.center + q * g.L);
        ts += f[n];
        fs += fhat[n];
    }
    return PoissonCheck{ts, fs, std::abs(ts - fs)};
}

cplx riemann_functional(const FiniteSignal& g, const FiniteSignal& f, std::int64_t r) {
    detail::require_same_grid(g, f);
    detail::require_stride(f.grid, r);
    const GridModel& grid = f.grid;
    cplx acc(0.0, 0.0);
    for (std::int64_t q = 0; q < grid.N / r; ++q) {
        const std::int64_t n = grid.wrap(grid.center + q * r);
        acc += g[n] * f[n];
    }
    return (static_cast<double>(r) * grid.alpha) * acc;
}

Bupu make_bupu(const GridModel& grid, std::int64_t w) {
    detail::require_stride(grid, w);
    if (2 * w > grid.N) {
        throw std::invalid_argument("make_bupu: need 2*w <= N so translates tile the circle");
    }
    FiniteSignal psi = zeros(grid);
    FiniteSignal tau = zeros(grid);
    const double wd = static_cast<double>(w);
    for (std::int64_t n = 0; n < grid.N; ++n) {
        const std::int64_t d = std::abs(grid.signed_offset(n - grid.center));
        // Hat built so that complementary pairs sum to exactly 1: the value
        // at distance d <= w/2 is rounded once, the partner at w - d is its
        // exact complement (Sterbenz).
        double v = 0.0;
        if (d < w) {
            if (2 * d <= w) {
                v = 1.0 - static_cast<double>(d) / wd;
            } else {
                v = 1.0 - (1.0 - static_cast<double>(w - d) / wd);
            }
        }
        psi[n] = cplx(v, 0.0);
        double u = 0.0;
        if (d <= w) {
            u = 1.0;
        } else if (d < 2 * w) {
            u = 2.0 - static_cast<double>(d) / wd;
        }
        tau[n] = cplx(u, 0.0);
    }
    return Bupu{grid, w, std::move(psi), std::move(tau)};
}

AtomicDecomposition atomic_decompose(const FiniteSignal& f, const Bupu& bupu) {
    detail::require_same_grid(f, bupu.psi);
    const GridModel& grid = f.grid;
    const std::int64_t cells = grid.N / bupu.w;
    const FiniteSignal fhat = fourier(f);
    const FiniteSignal window = gaussian(grid);

    AtomicDecomposition dec;
    dec.drop_threshold = 1e-14;

    FiniteSignal reconstruction = zeros(grid);
    for (std::int64_t k = 0; k < cells; ++k) {
        // Band slice f_k = IFT(FT(f) * T_{kw} psi), then time slices.
        const FiniteSignal fk =
            inverse_fourier(multiply(translate(bupu.psi, k * bupu.w), fhat));
        for (std::int64_t j = 0; j < cells; ++j) {
            FiniteSignal atom = multiply(translate(bupu.psi, j * bupu.w), fk);
            for (std::int64_t n = 0; n < grid.N; ++n) {
                reconstruction[n] += atom[n];
            }
            if (max_abs(atom) == 0.0) {
                continue;  // exactly-zero atom, nothing to measure
            }
            dec.atoms.push_back(std::move(atom));
            dec.labels.emplace_back(k, j);
        }
    }
    dec.reconstruction_error = max_abs_diff(f, reconstruction);

    dec.norms.resize(dec.atoms.size());
    // Atom norms are independent full-STFT reductions; the inner stft is
    // already parallel, so keep this loop serial.
    for (std::size_t i = 0; i < dec.atoms.size(); ++i) {
        dec.norms[i] = s0_norm(dec.atoms[i], window);
    }
    // Drop the numerically-zero atoms.
    std::size_t kept = 0;
    for (std::size_t i = 0; i < dec.atoms.size(); ++i) {
        if (dec.norms[i] < dec.drop_threshold) continue;
        if (kept != i) {
            dec.atoms[kept] = std::move(dec.atoms[i]);
            dec.labels[kept] = dec.labels[i];
            dec.norms[kept] = dec.norms[i];
        }
        ++kept;
    }
    dec.atoms.resize(kept);
    dec.labels.resize(kept);
    dec.norms.resize(kept);
    dec.norm_sum = 0.0;
    for (double v : dec.norms) dec.norm_sum += v;
    return dec;
}

double gabor_partial_sum_tail(const FiniteSignal& f, const GaborSystem& sys,
                              const std::vector<TFPoint>& F) {
    detail::require_same_grid(f, sys.window);
    if (!sys.dual) {
        throw std::invalid_argument("gabor_partial_sum_tail: dual window not computed");
    }
    const GridModel& grid = f.grid;
    FiniteSignal partial = zeros(grid);
    for (const TFPoint& lambda : F) {
        const FiniteSignal atom = tf_shift(sys.window, lambda);
        const cplx c = inner(f, tf_shift(*sys.dual, lambda));
        for (std::int64_t n = 0; n < grid.N; ++n) {
            partial[n] += c * atom[n];
        }
    }
    return s0_norm(f - partial, gaussian(grid));
}

TfBox tf_tightness(const std::vector<FiniteSignal>& signals,
                   const GaborSystem& sys, double eps) {
    if (signals.empty()) {
        throw std::invalid_argument("tf_tightness: empty signal set");
    }
    if (!sys.dual) {
        throw std::invalid_argument("tf_tightness: dual window not computed");
    }
    const GridModel& grid = sys.grid;
    // Box radii swept at the coarser lattice spacing, from the empty set up
    // to the full lattice.
    const double step = static_cast<double>(std::max(sys.a, sys.b)) * grid.alpha;
    std::vector<double> radii;
    radii.push_back(-1.0);  // empty set
    for (double R = 0.0; R < grid.beta / 2.0 + step; R += step) {
        radii.push_back(std::min(R, grid.beta / 2.0));
    }

    std::vector<double> worst(radii.size(), 0.0);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const std::vector<TFPoint> F =
            radii[i] < 0.0 ? std::vector<TFPoint>{} : lattice_box(sys, radii[i]);
        for (const FiniteSignal& f : signals) {
            worst[i] = std::max(worst[i], gabor_partial_sum_tail(f, sys, F));
        }
    }
    // Smallest radius whose whole suffix stays within eps.
    std::size_t first_good = radii.size();
    for (std::size_t i = radii.size(); i-- > 0;) {
        if (worst[i] <= eps) {
            first_good = i;
        } else {
            break;
        }
    }
    if (first_good == radii.size()) {
        return TfBox{false, grid.beta / 2.0};  // worst case: keep everything
    }
    if (radii[first_good] < 0.0) {
        return TfBox{true, 0.0};
    }
    return TfBox{false, radii[first_good]};
}

FiniteSignal shannon_reconstruct(const FiniteSignal& s, std::int64_t r,
                                 std::int64_t band, BandFilter filter) {
    detail::require_stride(s.grid, r);
    const GridModel& grid = s.grid;
    if (band < 0 || 2 * band + 1 > grid.N) {
        throw std::invalid_argument("shannon_reconstruct: band out of range");
    }
    const std::int64_t copies_spacing = grid.N / r;
    if (2 * band + 1 > copies_spacing) {
        throw AliasingError((2 * band + 1) - copies_spacing);
    }

    FiniteSignal spec = fourier(s);
    // Taper that still vanishes on every periodization replica.
    std::int64_t taper = 0;
    if (filter == BandFilter::plateau) {
        taper = std::min(band, (copies_spacing - (2 * band + 1)) / 2);
    }
    for (std::int64_t m = 0; m < grid.N; ++m) {
        const std::int64_t d = std::abs(grid.signed_offset(m - grid.center));
        double gain = 0.0;
        if (d <= band) {
            gain = 1.0;
        } else if (d <= band + taper) {
            gain = 1.0 - static_cast<double>(d - band) / static_cast<double>(taper + 1);
        }
        spec[m] *= static_cast<double>(r) * gain;
    }
    return inverse_fourier(spec);
}

}  // namespace mildtf
