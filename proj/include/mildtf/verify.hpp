#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mildtf {

/// One executed invariant check: the measured deviation against its pinned
/// tolerance. `detail` carries reported-but-not-asserted figures (condition
/// numbers, norm ratios).
struct CheckResult {
    std::string suite;
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

struct VerifyConfig {
    /// Grid sizes for the L-parametric suites; fixed-size checks ignore it.
    std::vector<std::int64_t> L_values{8, 16, 32};
    std::uint64_t seed = 20260809;
};

/// Names of the registered suites, in criterion order.
const std::vector<std::string>& suite_names();

/// Runs every check of the given suite ("all" for the full battery).
/// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_checks(const std::string& suite, const VerifyConfig& cfg);

}  // namespace mildtf
