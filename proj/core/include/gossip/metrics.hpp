#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gossip/engine.hpp"

namespace gossip::metrics {

enum class CoverageBasis {
  kExcludeOrigin,  // receivers / (n - 1)
  kAllNodes,       // (receivers + origin) / n
};

/// Mean over messages of the fraction of nodes reached. Empty when no
/// message was generated.
std::optional<double> coverage(const engine::EventTrace& trace,
                               CoverageBasis basis = CoverageBasis::kExcludeOrigin);

/// Mean hop count over every first-time non-origin delivery. Empty when
/// there was none.
std::optional<double> mean_delay(const engine::EventTrace& trace);

/// Total sends / (messages * (n - 1)). Throws when no message was generated.
double overhead_ratio(const engine::EventTrace& trace);

struct RunReport {
  std::optional<double> coverage;
  std::optional<double> mean_delay;
  std::uint64_t delivered = 0;
  std::uint64_t lower_bound = 0;
  double overhead_ratio = 0.0;
  std::size_t messages = 0;
  bool saturated = false;  // run stopped at the overhead ceiling; figures are partial
};

RunReport summarize(const engine::EventTrace& trace,
                    CoverageBasis basis = CoverageBasis::kExcludeOrigin);

std::string report_csv_header();
std::string report_csv_row(const RunReport& r);

/// Mean coverage at or above this rounds to 100% at integer-percent
/// precision, the granularity of the coverage targets in the tables; the
/// table recipes treat it as full coverage.
inline constexpr double kFullCoverage = 0.995;

}  // namespace gossip::metrics
