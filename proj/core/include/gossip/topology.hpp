#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gossip/degree_distribution.hpp"
#include "gossip/graph.hpp"

namespace gossip::topology {

/// G(n, M): exactly `edge_count` distinct edges drawn uniformly without
/// replacement (Floyd's sampling over pair indices).
OverlayGraph generate_er(std::size_t node_count, std::size_t edge_count, std::uint64_t seed);

/// Preferential attachment grown from a clique of edges_per_node+1 nodes.
/// Each arrival links to edges_per_node distinct targets drawn with
/// probability proportional to degree; duplicate draws are resampled.
OverlayGraph generate_ba(std::size_t node_count, std::size_t edges_per_node, std::uint64_t seed);

/// One-dimensional Watts-Strogatz: ring lattice with `neighbors_each_side`
/// links per side, far endpoint of each lattice edge rewired with
/// probability `rewire_prob` to a node that is neither u nor a neighbor of u.
OverlayGraph generate_ws(std::size_t node_count, std::size_t neighbors_each_side,
                         double rewire_prob, std::uint64_t seed);

/// Uniform-ish random k-regular simple graph via the pairing model with
/// pair-level rejection of loops and multi-edges, restarting when stuck.
OverlayGraph generate_kregular(std::size_t node_count, std::size_t k, std::uint64_t seed);

inline constexpr int kMaxPairingRestarts = 1000;

/// BFS distances from `source`; unreachable nodes get -1.
std::vector<int> bfs_distances(const OverlayGraph& g, NodeId source);

bool is_connected(const OverlayGraph& g);

/// Eccentricity maximum over all nodes, or nullopt when disconnected.
std::optional<int> diameter(const OverlayGraph& g);

DegreeDistribution empirical_degree_distribution(const OverlayGraph& g);

enum class GraphKind { kErdosRenyi, kBarabasiAlbert, kWattsStrogatz, kRegular };

std::string to_string(GraphKind kind);
GraphKind parse_graph_kind(const std::string& name);

struct GeneratorSpec {
  GraphKind kind = GraphKind::kErdosRenyi;
  std::size_t node_count = 500;
  /// Meaning depends on kind: total edges (ER), edges per arrival (BA),
  /// neighbors per side (WS), degree (k-regular).
  std::size_t size_param = 1000;
  double rewire_prob = 0.0;  // WS only

  void validate() const;
  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// Single graph from the spec, no connectivity filter.
OverlayGraph generate(const GeneratorSpec& spec, std::uint64_t seed);

struct GeneratedGraph {
  OverlayGraph graph;
  std::uint64_t seed = 0;        // seed requested for this member
  std::uint64_t used_seed = 0;   // seed of the accepted attempt
  std::size_t rejections = 0;    // disconnected attempts discarded
  int diameter = 0;
};

inline constexpr std::size_t kMaxConnectivityAttempts = 1'000'000;

/// Generates until connected. Attempt 0 uses `seed`; attempt j > 0 uses
/// mix64(seed ^ j-th derivation).
GeneratedGraph generate_connected(const GeneratorSpec& spec, std::uint64_t seed);

struct Corpus {
  std::string name;
  GeneratorSpec spec;
  std::uint64_t base_seed = 0;
  std::vector<GeneratedGraph> members;

  int max_diameter() const;
  std::size_t size() const noexcept { return members.size(); }
  const OverlayGraph& graph(std::size_t i) const { return members.at(i).graph; }
};

/// Members use seeds base_seed .. base_seed+count-1. A member failure is
/// rethrown with its index in the message. `threads` = 0 picks the hardware
/// concurrency.
Corpus build_corpus(const GeneratorSpec& spec, std::size_t count, std::uint64_t base_seed,
                    std::string name = {}, unsigned threads = 1);

/// Layout: <dir>/meta (JSON) and <dir>/graph-<k>.edges. Refuses to touch an
/// existing directory unless `overwrite`.
void save_corpus(const Corpus& corpus, const std::filesystem::path& dir, bool overwrite = false);
Corpus load_corpus(const std::filesystem::path& dir);

}  // namespace gossip::topology
