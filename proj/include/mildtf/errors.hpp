#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mildtf {

/// Thrown by dual_window when the conjugate-gradient solve (and the dense
/// fallback, where applicable) cannot drive the frame-operator residual
/// below tolerance. Carries the best residual observed.
class NotAFrameError : public std::runtime_error {
public:
    NotAFrameError(double residual, int iterations)
        : std::runtime_error("gabor system is not a usable frame (residual " +
                             std::to_string(residual) + " after " +
                             std::to_string(iterations) + " iterations)"),
          residual(residual),
          iterations(iterations) {}

    double residual;
    int iterations;
};

/// Thrown by shannon_reconstruct when the requested band does not fit the
/// sampling stride. overlap_count = number of frequency bins hit by more
/// than one periodization copy.
class AliasingError : public std::runtime_error {
public:
    AliasingError(std::int64_t overlap_count)
        : std::runtime_error("band too large for sampling stride (" +
                             std::to_string(overlap_count) +
                             " aliased frequency bins)"),
          overlap_count(overlap_count) {}

    std::int64_t overlap_count;
};

/// Thrown by the CSV/ensemble readers; carries the offending file and line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, std::int64_t line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
          path(std::move(path)),
          line(line) {}

    std::string path;
    std::int64_t line;
};

}  // namespace mildtf
