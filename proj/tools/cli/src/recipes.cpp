#include "gossipsim_cli/recipes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "gossip/metrics.hpp"

namespace gossip::cli {
namespace {

using protocol::Variant;
using topology::GeneratorSpec;
using topology::GraphKind;

const std::vector<Variant> kAllProtocols{Variant::kFixedProbability, Variant::kProbabilisticBroadcast, Variant::kDdf1,
                                         Variant::kDdf2};

Recipe table(std::string name, GeneratorSpec spec, int ttl) {
  Recipe r;
  r.corpus = name;
  r.name = std::move(name);
  r.kind = RecipeKind::kTable;
  r.spec = spec;
  r.ttl = ttl;
  r.protocols = kAllProtocols;
  return r;
}

Recipe free_riding(const Recipe& base) {
  Recipe r = base;
  r.name = "free-riding-" + base.name.substr(0, base.name.find('-'));
  r.kind = RecipeKind::kFreeRiding;
  r.protocols = {Variant::kFixedProbability, Variant::kDdf2};
  r.free_rider_fractions = {0.0, 0.1, 0.2, 0.3};
  return r;
}

std::vector<Recipe> build_recipes() {
  const std::size_t n = 500;
  std::vector<Recipe> out{
      table("random-1000", {GraphKind::kErdosRenyi, n, 1000, 0.0}, 16),
      table("random-1500", {GraphKind::kErdosRenyi, n, 1500, 0.0}, 10),
      table("random-2000", {GraphKind::kErdosRenyi, n, 2000, 0.0}, 8),
      table("scalefree-997", {GraphKind::kBarabasiAlbert, n, 2, 0.0}, 10),
      table("scalefree-1494", {GraphKind::kBarabasiAlbert, n, 3, 0.0}, 7),
      table("scalefree-1990", {GraphKind::kBarabasiAlbert, n, 4, 0.0}, 6),
      table("smallworld-1000", {GraphKind::kWattsStrogatz, n, 2, 0.1}, 17),
      table("smallworld-1500", {GraphKind::kWattsStrogatz, n, 3, 0.1}, 12),
      table("smallworld-2000", {GraphKind::kWattsStrogatz, n, 4, 0.1}, 10),
      table("kregular-1000", {GraphKind::kRegular, n, 4, 0.0}, 11),
      table("kregular-1500", {GraphKind::kRegular, n, 6, 0.0}, 8),
      table("kregular-2000", {GraphKind::kRegular, n, 8, 0.0}, 7),
  };
  Recipe cache = out[0];
  cache.name = "cache-study";
  cache.kind = RecipeKind::kCacheStudy;
  cache.protocols = {Variant::kFixedProbability};
  cache.caches = {16, 64, 256, 512};
  Recipe ttl = out[0];
  ttl.name = "ttl-study";
  ttl.kind = RecipeKind::kTtlStudy;
  ttl.protocols = {Variant::kFixedProbability};
  ttl.ttls = {13, 16, 20};
  out.push_back(cache);
  out.push_back(ttl);
  for (const char* stem : {"random-1500", "scalefree-1494", "smallworld-1500", "kregular-1500"}) {
    const auto it = std::find_if(out.begin(), out.end(), [&](const Recipe& r) { return r.name == stem; });
    out.push_back(free_riding(*it));
  }
  return out;
}

std::string format_fraction(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", f);
  return buf;
}

}  // namespace

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> all = build_recipes();
  return all;
}

const Recipe& find_recipe(const std::string& name) {
  for (const auto& r : recipes()) {
    if (r.name == name) return r;
  }
  std::string known;
  for (const auto& r : recipes()) known += (known.empty() ? "" : ", ") + r.name;
  throw ParameterError("unknown recipe '" + name + "'; known recipes: " + known);
}

std::vector<double> default_grid(Variant variant, std::size_t points) {
  if (points < 1) throw ParameterError("grid needs at least one point");
  switch (variant) {
    case Variant::kFixedProbability:
    case Variant::kProbabilisticBroadcast:
      return metrics::linear_grid(1.0 / static_cast<double>(points), 1.0, points);
    case Variant::kDdf1: return metrics::log_grid(1e-3, 4.0, points);
    case Variant::kDdf2: return metrics::log_grid(0.05, 50.0, points);
  }
  throw ParameterError("unknown protocol");
}

topology::Corpus recipe_corpus(const Recipe& recipe, const RecipeOptions& options, const std::filesystem::path& root) {
  const std::string name =
      recipe.corpus + "-g" + std::to_string(options.graphs) + "-s" + std::to_string(options.seed);
  const auto dir = root / name;
  if (std::filesystem::exists(dir)) {
    topology::Corpus c = topology::load_corpus(dir);
    if (!(c.spec == recipe.spec) || c.size() != options.graphs || c.base_seed != options.seed) {
      throw ParameterError("corpus " + dir.string() + " does not match recipe " + recipe.name);
    }
    return c;
  }
  topology::Corpus c = topology::build_corpus(recipe.spec, options.graphs, options.seed, name, options.threads);
  save_corpus(c, dir);
  return c;
}

std::vector<RecipeSweep> run_recipe(const Recipe& recipe, const topology::Corpus& corpus,
                                    const RecipeOptions& options) {
  engine::SimulationConfig base;
  base.total_steps = options.steps;
  base.cache_capacity = recipe.cache;
  base.protocol.initial_ttl = recipe.ttl;
  base.seed = options.seed;
  base.overhead_ceiling = options.overhead_ceiling;

  std::vector<RecipeSweep> plan;
  for (Variant v : recipe.protocols) {
    engine::SimulationConfig cfg = base;
    cfg.protocol.variant = v;
    const std::string stem = protocol::to_string(v);
    switch (recipe.kind) {
      case RecipeKind::kTable: plan.push_back({stem, cfg, {}, {}}); break;
      case RecipeKind::kCacheStudy:
        for (std::size_t c : recipe.caches) {
          cfg.cache_capacity = c;
          plan.push_back({stem + "-cache" + std::to_string(c), cfg, {}, {}});
        }
        break;
      case RecipeKind::kTtlStudy:
        for (int t : recipe.ttls) {
          cfg.protocol.initial_ttl = t;
          plan.push_back({stem + "-ttl" + std::to_string(t), cfg, {}, {}});
        }
        break;
      case RecipeKind::kFreeRiding:
        for (double f : recipe.free_rider_fractions) {
          cfg.free_rider_fraction = f;
          plan.push_back({stem + "-fr" + format_fraction(f), cfg, {}, {}});
        }
        break;
    }
  }
  metrics::SweepOptions sweep_options;
  sweep_options.repetitions = options.repetitions;
  sweep_options.threads = options.threads;
  for (auto& s : plan) {
    s.grid = default_grid(s.config.protocol.variant, options.grid_points);
    s.points = metrics::sweep(corpus, s.config, s.grid, sweep_options);
  }
  return plan;
}

const std::vector<double>& table_targets() {
  static const std::vector<double> targets{metrics::kFullCoverage, 0.99, 0.90, 0.75};
  return targets;
}

std::string coverage_table_csv(const std::vector<RecipeSweep>& sweeps) {
  std::string out = "label,target_coverage,overhead,delay,vs_best\n";
  char buf[256];
  for (double target : table_targets()) {
    std::vector<std::optional<metrics::CoverageCost>> costs;
    std::optional<double> best;
    for (const auto& s : sweeps) {
      costs.push_back(metrics::overhead_for_coverage(s.points, target));
      if (costs.back() && (!best || costs.back()->overhead < *best)) best = costs.back()->overhead;
    }
    for (std::size_t i = 0; i < sweeps.size(); ++i) {
      if (!costs[i]) {
        std::snprintf(buf, sizeof buf, "%s,%.4g,,,\n", sweeps[i].label.c_str(), target);
      } else {
        const double vs = (costs[i]->overhead / *best - 1.0) * 100.0;
        std::snprintf(buf, sizeof buf, "%s,%.4g,%.6g,%.6g,%.2f\n", sweeps[i].label.c_str(), target,
                      costs[i]->overhead, costs[i]->delay, vs);
      }
      out += buf;
    }
  }
  return out;
}

std::string free_riding_csv(const std::vector<RecipeSweep>& sweeps) {
  auto best_coverage = [](const RecipeSweep& s) {
    double best = 0.0;
    for (const auto& p : s.points) {
      if (p.saturated_runs == 0) best = std::max(best, p.coverage);
    }
    return best;
  };
  std::map<protocol::Variant, double> baseline;
  for (const auto& s : sweeps) {
    if (s.config.free_rider_fraction == 0.0) baseline[s.config.protocol.variant] = best_coverage(s);
  }
  std::string out = "label,free_riders,best_coverage,deficit\n";
  char buf[256];
  for (const auto& s : sweeps) {
    const double best = best_coverage(s);
    const auto it = baseline.find(s.config.protocol.variant);
    const double deficit = it == baseline.end() ? std::nan("") : it->second - best;
    std::snprintf(buf, sizeof buf, "%s,%g,%.6g,%.6g\n", s.label.c_str(), s.config.free_rider_fraction, best,
                  deficit);
    out += buf;
  }
  return out;
}

}  // namespace gossip::cli
