#pragma once

#include <filesystem>
#include <nlohmann/json_fwd.hpp>

#include "mildtf/grid.hpp"
#include "mildtf/gsp.hpp"
#include "mildtf/mild.hpp"
#include "mildtf/transforms.hpp"

namespace mildtf::io {

/// Path of the JSON sidecar accompanying a data file: extension -> .json.
std::filesystem::path sidecar_path(const std::filesystem::path& data_path);

/// Signal CSV: header `index,re,im`, one row per grid point, LF endings,
/// doubles printed round-trip exact. Grid metadata goes to the sidecar:
/// {"L":, "N":, "alpha":, "beta":}.
void write_signal_csv(const std::filesystem::path& path, const FiniteSignal& f);

/// Reads a signal CSV together with its sidecar. Throws ParseError with the
/// offending line on malformed input.
FiniteSignal read_signal_csv(const std::filesystem::path& path);

/// STFT magnitude as 16-bit big-endian binary PGM (P5), values scaled by
/// the magnitude maximum; sidecar records the grid, window id and scale.
/// Rows run over s_idx from high to low, columns over t_idx.
void write_stft_pgm(const std::filesystem::path& path, const STFTMap& map);

/// Full complex STFT as CSV `t_idx,s_idx,re,im`.
void write_stft_csv(const std::filesystem::path& path, const STFTMap& map);

/// Ensemble export: one JSON header line (grid, M, seed, spec, generator)
/// followed by the row-major complex64 payload (float32 re, float32 im).
void write_ensemble(const std::filesystem::path& path, const GspEnsemble& e);

/// Reads the ensemble format back (spec metadata is restored for white and
/// stationary kinds; general-covariance payloads reload with the matrix
/// replaced by its recorded hash only).
GspEnsemble read_ensemble(const std::filesystem::path& path);

/// Autocorrelation matrix as CSV, one row per matrix row, interleaved
/// re,im per entry.
void write_autocorr_csv(const std::filesystem::path& path, const Autocorrelation& a);

nlohmann::json grid_json(const GridModel& grid);
nlohmann::json to_json(const PoissonCheck& pc);
nlohmann::json to_json(const MildReport& report);
nlohmann::json to_json(const WssDeviation& dev);

}  // namespace mildtf::io
