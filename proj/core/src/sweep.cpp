#include "gossip/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gossip/parallel.hpp"

namespace gossip::metrics {

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t graph_index, std::size_t repetition) {
  return derive_seed(derive_seed(base_seed, Stream::kRun, graph_index), Stream::kRun, repetition);
}

SweepError::SweepError(std::size_t graph, std::uint64_t s, double p, const std::string& what)
    : std::runtime_error("run failed (graph " + std::to_string(graph) + ", seed " + std::to_string(s) +
                         ", param " + std::to_string(p) + "): " + what),
      graph_index(graph),
      seed(s),
      param(p) {}

SweepPoint aggregate(double param, const std::vector<RunReport>& reports) {
  SweepPoint p;
  p.param = param;
  p.runs = reports.size();
  double cov = 0.0;
  double delay = 0.0;
  double overhead = 0.0;
  std::size_t covered = 0;
  std::size_t delayed = 0;
  for (const auto& r : reports) {
    if (r.coverage) {
      cov += *r.coverage;
      ++covered;
    }
    if (r.mean_delay) {
      delay += *r.mean_delay;
      ++delayed;
    }
    overhead += r.overhead_ratio;
    if (r.saturated) ++p.saturated_runs;
  }
  p.coverage = covered ? cov / static_cast<double>(covered) : 0.0;
  p.delay = delayed ? delay / static_cast<double>(delayed) : std::nan("");
  p.overhead = reports.empty() ? 0.0 : overhead / static_cast<double>(reports.size());
  if (covered > 1) {
    double ss = 0.0;
    for (const auto& r : reports) {
      if (r.coverage) ss += (*r.coverage - p.coverage) * (*r.coverage - p.coverage);
    }
    p.stdev_coverage = std::sqrt(ss / static_cast<double>(covered - 1));
  }
  return p;
}

std::vector<SweepPoint> sweep(const topology::Corpus& corpus, const engine::SimulationConfig& base,
                              std::vector<double> grid, const SweepOptions& options) {
  if (grid.empty()) throw ParameterError("sweep grid is empty");
  if (options.repetitions < 1) throw ParameterError("sweep needs at least one repetition");
  if (corpus.size() == 0) throw ParameterError("sweep corpus is empty");
  std::sort(grid.begin(), grid.end());
  for (double v : grid) {
    auto probe = base.protocol;
    probe.parameter = v;
    probe.validate();
  }
  base.validate();

  const std::size_t per_value = corpus.size() * options.repetitions;
  std::vector<RunReport> reports(grid.size() * per_value);
  parallel_for(reports.size(), options.threads, [&](std::size_t job) {
    const std::size_t gi = job / per_value;
    const std::size_t graph = (job % per_value) / options.repetitions;
    const std::size_t rep = job % options.repetitions;
    engine::SimulationConfig cfg = base;
    cfg.protocol.parameter = grid[gi];
    cfg.seed = run_seed(base.seed, graph, rep);
    cfg.record_deliveries = false;
    try {
      reports[job] = summarize(engine::run(corpus.graph(graph), cfg), options.basis);
    } catch (const std::exception& e) {
      throw SweepError(graph, cfg.seed, grid[gi], e.what());
    }
  });

  std::vector<SweepPoint> points;
  points.reserve(grid.size());
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    const auto first = reports.begin() + static_cast<std::ptrdiff_t>(gi * per_value);
    points.push_back(aggregate(grid[gi], std::vector<RunReport>(first, first + static_cast<std::ptrdiff_t>(per_value))));
  }
  return points;
}

std::optional<CoverageCost> overhead_for_coverage(const std::vector<SweepPoint>& points, double target) {
  std::optional<CoverageCost> best;
  for (const auto& p : points) {
    if (p.saturated_runs > 0 || p.coverage < target) continue;
    if (!best || p.overhead < best->overhead) best = CoverageCost{p.overhead, p.delay, p.param};
  }
  return best;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "param,coverage,delay,overhead,stdev_coverage,runs,saturated_runs\n";
  char buf[256];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6g,%.6g,%.6g,%zu,%zu\n", p.param, p.coverage, p.delay,
                  p.overhead, p.stdev_coverage, p.runs, p.saturated_runs);
    out += buf;
  }
  return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const auto last = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const auto k = static_cast<double>(i);
    out[i] = (lo * (last - k) + hi * k) / last;
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0 && hi > 0.0)) throw ParameterError("log grid bounds must be positive");
  auto out = linear_grid(std::log(lo), std::log(hi), count);
  for (double& v : out) v = std::exp(v);
  if (!out.empty()) {
    out.front() = lo;
    out.back() = hi;
  }
  return out;
}

}  // namespace gossip::metrics
