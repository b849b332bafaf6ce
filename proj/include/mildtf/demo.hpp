#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "mildtf/grid.hpp"
#include "mildtf/transforms.hpp"

namespace mildtf {

/// Configuration of the four-panel periodization/sampling spectrogram demo.
struct DemoConfig {
    std::int64_t L = 32;
    std::string window = "gaussian";       // "gaussian" or a signal CSV path
    std::int64_t periodize_stride = 0;     // 0 -> N/4
    std::int64_t sample_stride = 0;        // 0 -> 4
    std::filesystem::path out_dir = ".";
    enum class Format { pgm, csv } format = Format::pgm;
};

/// The four spectrograms: original, periodized, sampled, sampled+periodized.
/// The sampled panels use the Riemann-normalized comb (point masses carry
/// the physical step) so that replica weights are 1 and raw magnitudes are
/// directly comparable across panels.
struct Figure1Result {
    std::array<STFTMap, 4> panels;
    std::array<std::string, 4> panel_names;
    TFPoint signal_shift;          // TF shift applied to the Gaussian
    double central_radius = 0.0;   // beta/8
    /// max | |P1|-|P4| | / max |P1| over the central box.
    double central_agreement = 0.0;
    /// Replica peak magnitudes relative to each panel's own maximum,
    /// measured in a one-unit box around the predicted offsets.
    double periodized_replica_peak = 0.0;  // panel 2, time offset r_p*alpha
    double sampled_replica_peak = 0.0;     // panel 3, frequency offset L/r_s
    double predicted_time_offset = 0.0;
    double predicted_freq_offset = 0.0;
};

Figure1Result figure1_panels(const DemoConfig& cfg);

}  // namespace mildtf
