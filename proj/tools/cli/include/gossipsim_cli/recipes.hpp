#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gossip/engine.hpp"
#include "gossip/protocol.hpp"
#include "gossip/sweep.hpp"
#include "gossip/topology.hpp"

namespace gossip::cli {

enum class RecipeKind {
  kTable,       // four protocols, one corpus, coverage-target table
  kCacheStudy,  // FP at several cache sizes
  kTtlStudy,    // FP at several TTLs
  kFreeRiding,  // FP and DDF2 at several free-rider fractions
};

struct Recipe {
  std::string name;
  RecipeKind kind = RecipeKind::kTable;
  std::string corpus;  // corpus stem, e.g. "random-1000"
  topology::GeneratorSpec spec;
  int ttl = 16;
  std::size_t cache = 256;
  std::vector<protocol::Variant> protocols;
  std::vector<std::size_t> caches;        // cache study
  std::vector<int> ttls;                  // TTL study
  std::vector<double> free_rider_fractions;  // free riding, 0 included
};

const std::vector<Recipe>& recipes();
/// Throws ParameterError listing the known names.
const Recipe& find_recipe(const std::string& name);

struct RecipeOptions {
  std::uint64_t seed = 1;
  std::size_t graphs = 10;
  std::size_t repetitions = 1;
  Step steps = 1000;
  std::size_t grid_points = 100;
  double overhead_ceiling = 40.0;  // 0 disables
  unsigned threads = 0;
};

/// Default sweep grid per protocol: FP/PB probabilities on (0, 1], DDF
/// alphas on a log scale wide enough to span from flooding to silence.
std::vector<double> default_grid(protocol::Variant variant, std::size_t points);

/// One swept configuration of a recipe.
struct RecipeSweep {
  std::string label;  // file stem, e.g. "fp" or "fp-cache16"
  engine::SimulationConfig config;
  std::vector<double> grid;
  std::vector<metrics::SweepPoint> points;
};

/// Loads <root>/<stem>-g<graphs>-s<seed> if present (and matching the
/// recipe), otherwise builds and saves it.
topology::Corpus recipe_corpus(const Recipe& recipe, const RecipeOptions& options,
                               const std::filesystem::path& root);

std::vector<RecipeSweep> run_recipe(const Recipe& recipe, const topology::Corpus& corpus,
                                    const RecipeOptions& options);

/// Coverage targets of the tables: full (see metrics::kFullCoverage), 99%,
/// 90%, 75%.
const std::vector<double>& table_targets();

/// CSV "label,target_coverage,overhead,delay,vs_best". vs_best is the
/// percentage above the cheapest label at that target; empty cells when a
/// label never reaches the target or a point was saturated.
std::string coverage_table_csv(const std::vector<RecipeSweep>& sweeps);

/// CSV "label,free_riders,best_coverage,deficit" for a free-riding recipe.
/// Deficit is measured against the same protocol without free riders.
std::string free_riding_csv(const std::vector<RecipeSweep>& sweeps);

}  // namespace gossip::cli
