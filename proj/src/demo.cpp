#include "mildtf/demo.hpp"

#include <cmath>
#include <stdexcept>

#include "mildtf/io.hpp"
#include "mildtf/mild.hpp"

namespace mildtf {

namespace {

// Largest |V| over TF points within a max-norm box around a physical center.
double box_peak(const STFTMap& map, double t0, double s0, double half_width) {
    const GridModel& g = map.grid;
    double peak = 0.0;
    for (std::int64_t t = 0; t < g.N; ++t) {
        if (std::abs(g.shift_coord(t) - t0) > half_width) continue;
        for (std::int64_t s = 0; s < g.N; ++s) {
            if (std::abs(g.shift_coord(s) - s0) > half_width) continue;
            peak = std::max(peak, std::abs(map.at(t, s)));
        }
    }
    return peak;
}

}  // namespace

Figure1Result figure1_panels(const DemoConfig& cfg) {
    const GridModel grid = make_grid(cfg.L);
    const std::int64_t r_p = cfg.periodize_stride > 0 ? cfg.periodize_stride : grid.N / 4;
    const std::int64_t r_s = cfg.sample_stride > 0 ? cfg.sample_stride : 4;
    detail::require_stride(grid, r_p);
    detail::require_stride(grid, r_s);

    FiniteSignal window = cfg.window == "gaussian"
                              ? gaussian(grid)
                              : io::read_signal_csv(cfg.window);
    if (!(window.grid == grid)) {
        throw std::invalid_argument("figure1: window grid does not match --L");
    }

    // A well-concentrated signal, TF-shifted off the origin so the four
    // panels are visually distinguishable: shift (beta/8, beta/8).
    const std::int64_t shift = grid.N / 8;
    const TFPoint mu{shift, shift};
    const FiniteSignal f = tf_shift(gaussian(grid), mu);

    const FiniteSignal f_per = periodize(f, r_p);
    // Riemann-normalized sampling: point masses carry the physical step
    // r_s * alpha, so every spectral replica has unit weight.
    const cplx riemann_weight(static_cast<double>(r_s), 0.0);
    const FiniteSignal f_smp = riemann_weight * sample(f, r_s);
    const FiniteSignal f_both = riemann_weight * sample(f_per, r_s);

    Figure1Result res;
    res.panels = {stft(f, window), stft(f_per, window), stft(f_smp, window),
                  stft(f_both, window)};
    res.panel_names = {"original", "periodized", "sampled", "sampled_periodized"};
    res.signal_shift = mu;
    res.central_radius = grid.beta / 8.0;

    const STFTMap& p1 = res.panels[0];
    const STFTMap& p4 = res.panels[3];
    double worst = 0.0;
    double scale = 0.0;
    for (std::int64_t t = 0; t < grid.N; ++t) {
        if (std::abs(grid.shift_coord(t)) > res.central_radius) continue;
        for (std::int64_t s = 0; s < grid.N; ++s) {
            if (std::abs(grid.shift_coord(s)) > res.central_radius) continue;
            const double m1 = std::abs(p1.at(t, s));
            const double m4 = std::abs(p4.at(t, s));
            worst = std::max(worst, std::abs(m1 - m4));
            scale = std::max(scale, m1);
        }
    }
    res.central_agreement = scale > 0.0 ? worst / scale : 0.0;

    // Sampling periodizes the STFT in the frequency direction (offset
    // L/r_s), periodization replicates it in time (offset r_p*alpha).
    const double t0 = grid.shift_coord(mu.t_idx);
    const double s0 = grid.shift_coord(mu.s_idx);
    res.predicted_time_offset = static_cast<double>(r_p) * grid.alpha;
    res.predicted_freq_offset = static_cast<double>(grid.L) / static_cast<double>(r_s);
    res.periodized_replica_peak =
        box_peak(res.panels[1], t0 - res.predicted_time_offset, s0, 1.0) /
        res.panels[1].magnitude_max();
    res.sampled_replica_peak =
        box_peak(res.panels[2], t0, s0 - res.predicted_freq_offset, 1.0) /
        res.panels[2].magnitude_max();
    return res;
}

}  // namespace mildtf
