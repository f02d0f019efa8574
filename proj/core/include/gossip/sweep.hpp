#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gossip/engine.hpp"
#include "gossip/metrics.hpp"
#include "gossip/topology.hpp"

namespace gossip::metrics {

struct SweepPoint {
  double param = 0.0;
  double coverage = 0.0;
  double delay = 0.0;  // NaN when no run had a delivery
  double overhead = 0.0;
  double stdev_coverage = 0.0;
  std::size_t runs = 0;
  std::size_t saturated_runs = 0;  // runs cut off at the overhead ceiling
};

struct SweepOptions {
  std::size_t repetitions = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
  CoverageBasis basis = CoverageBasis::kExcludeOrigin;
};

/// Seed of run (graph, repetition). Independent of the swept parameter so
/// every grid value sees the same generation schedules and tie-breaks.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t graph_index, std::size_t repetition);

/// Thrown when a member run fails; identifies the run.
class SweepError : public std::runtime_error {
 public:
  SweepError(std::size_t graph_index, std::uint64_t seed, double param, const std::string& what);
  std::size_t graph_index;
  std::uint64_t seed;
  double param;
};

/// Runs every grid value over every corpus graph x repetition, replacing the
/// protocol parameter of `base`. Points come back sorted by parameter.
std::vector<SweepPoint> sweep(const topology::Corpus& corpus, const engine::SimulationConfig& base,
                              std::vector<double> grid, const SweepOptions& options = {});

/// Aggregate of already computed run reports (arithmetic means, sample stdev).
SweepPoint aggregate(double param, const std::vector<RunReport>& reports);

struct CoverageCost {
  double overhead = 0.0;
  double delay = 0.0;
  double param = 0.0;
};

/// Cheapest point whose mean coverage reaches `target`; empty if none does.
/// Points with saturated runs are skipped: their figures are partial.
std::optional<CoverageCost> overhead_for_coverage(const std::vector<SweepPoint>& points, double target);

std::string sweep_csv(const std::vector<SweepPoint>& points);

/// Grid helpers.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace gossip::metrics
