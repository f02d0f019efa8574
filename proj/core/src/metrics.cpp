#include "gossip/metrics.hpp"

#include <cmath>
#include <cstdio>

namespace gossip::metrics {

std::optional<double> coverage(const engine::EventTrace& trace, CoverageBasis basis) {
  if (trace.messages.empty() || trace.node_count < 2) return std::nullopt;
  const auto n = static_cast<double>(trace.node_count);
  double sum = 0.0;
  for (const auto& t : trace.tallies) {
    sum += basis == CoverageBasis::kExcludeOrigin ? t.first_receivers / (n - 1.0) : (t.first_receivers + 1.0) / n;
  }
  return sum / static_cast<double>(trace.messages.size());
}

std::optional<double> mean_delay(const engine::EventTrace& trace) {
  std::uint64_t receivers = 0;
  std::uint64_t hops = 0;
  for (const auto& t : trace.tallies) {
    receivers += t.first_receivers;
    hops += t.hop_sum;
  }
  if (receivers == 0) return std::nullopt;
  return static_cast<double>(hops) / static_cast<double>(receivers);
}

double overhead_ratio(const engine::EventTrace& trace) {
  if (trace.messages.empty()) throw ParameterError("overhead ratio undefined: no message generated");
  const double bound = static_cast<double>(trace.messages.size()) * static_cast<double>(trace.node_count - 1);
  return static_cast<double>(trace.total_sends) / bound;
}

RunReport summarize(const engine::EventTrace& trace, CoverageBasis basis) {
  RunReport r;
  r.coverage = coverage(trace, basis);
  r.mean_delay = mean_delay(trace);
  r.delivered = trace.total_sends;
  r.messages = trace.messages.size();
  r.saturated = trace.saturated;
  r.lower_bound = static_cast<std::uint64_t>(r.messages) * (trace.node_count > 0 ? trace.node_count - 1 : 0);
  r.overhead_ratio = r.lower_bound > 0 ? static_cast<double>(r.delivered) / static_cast<double>(r.lower_bound) : 0.0;
  return r;
}

std::string report_csv_header() { return "coverage,delay,delivered,lower_bound,overhead,messages,saturated\n"; }

std::string report_csv_row(const RunReport& r) {
  char buf[256];
  auto opt = [](const std::optional<double>& v) { return v ? *v : std::nan(""); };
  std::snprintf(buf, sizeof buf, "%.6g,%.6g,%llu,%llu,%.6g,%zu,%d\n", opt(r.coverage), opt(r.mean_delay),
                static_cast<unsigned long long>(r.delivered), static_cast<unsigned long long>(r.lower_bound),
                r.overhead_ratio, r.messages, r.saturated ? 1 : 0);
  return buf;
}

}  // namespace gossip::metrics
