#include "gossip/topology.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "gossip/rng.hpp"

namespace gossip::topology {
namespace {

std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Index k in [0, n(n-1)/2) -> (u, v), u < v, enumerating v-major:
// (0,1), (0,2), (1,2), (0,3), ...
Edge decode_pair(std::uint64_t k) {
  auto v = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(k))) / 2.0);
  while (v * (v - 1) / 2 > k) --v;
  while ((v + 1) * v / 2 <= k) ++v;
  const std::uint64_t u = k - v * (v - 1) / 2;
  return {static_cast<NodeId>(u), static_cast<NodeId>(v)};
}

constexpr std::uint64_t kDensePairLimit = std::uint64_t{1} << 26;

std::vector<Edge> er_edges(std::size_t node_count, std::size_t edge_count, std::uint64_t seed) {
  if (node_count == 0) throw ParameterError("ER: node_count must be positive");
  const std::uint64_t max_edges = static_cast<std::uint64_t>(node_count) * (node_count - 1) / 2;
  if (edge_count > max_edges) {
    throw ParameterError("ER: edge_count " + std::to_string(edge_count) + " exceeds maximum " +
                         std::to_string(max_edges));
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(edge_count);
  // Floyd's algorithm: uniform m-subset of [0, max_edges). A bitmap is much
  // cheaper than hashing while the pair space stays small.
  if (max_edges <= kDensePairLimit) {
    std::vector<bool> chosen(max_edges, false);
    for (std::uint64_t j = max_edges - edge_count; j < max_edges; ++j) {
      std::uint64_t pick = rng.below(j + 1);
      if (chosen[pick]) pick = j;
      chosen[pick] = true;
      edges.push_back(decode_pair(pick));
    }
    return edges;
  }
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(edge_count * 2);
  for (std::uint64_t j = max_edges - edge_count; j < max_edges; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    edges.push_back(decode_pair(pick));
  }
  return edges;
}

std::vector<Edge> ba_edges(std::size_t node_count, std::size_t edges_per_node, std::uint64_t seed) {
  if (edges_per_node < 1) throw ParameterError("BA: edges_per_node must be >= 1");
  if (node_count <= edges_per_node) throw ParameterError("BA: node_count must exceed edges_per_node");
  Rng rng(seed);
  std::vector<Edge> edges;
  // Each edge contributes both endpoints: sampling uniformly from this list
  // is sampling proportionally to degree.
  std::vector<NodeId> endpoints;
  const std::size_t seed_nodes = edges_per_node + 1;
  for (NodeId v = 1; v < seed_nodes; ++v) {
    for (NodeId u = 0; u < v; ++u) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<NodeId> targets;
  for (auto v = static_cast<NodeId>(seed_nodes); v < node_count; ++v) {
    targets.clear();
    while (targets.size() < edges_per_node) {
      const NodeId t = endpoints[rng.below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (NodeId t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return edges;
}

std::vector<Edge> ws_edges(std::size_t node_count, std::size_t neighbors_each_side, double rewire_prob,
                           std::uint64_t seed) {
  if (!(rewire_prob >= 0.0 && rewire_prob <= 1.0)) throw ParameterError("WS: rewire_prob outside [0,1]");
  if (neighbors_each_side < 1) throw ParameterError("WS: neighbors_each_side must be >= 1");
  if (2 * neighbors_each_side >= node_count) throw ParameterError("WS: lattice degree must be below node_count");
  Rng rng(seed);
  std::vector<std::unordered_set<NodeId>> adj(node_count);
  std::vector<Edge> lattice;
  for (std::size_t j = 1; j <= neighbors_each_side; ++j) {
    for (std::size_t u = 0; u < node_count; ++u) {
      const auto a = static_cast<NodeId>(u);
      const auto b = static_cast<NodeId>((u + j) % node_count);
      lattice.emplace_back(a, b);
      adj[a].insert(b);
      adj[b].insert(a);
    }
  }
  for (auto& [u, v] : lattice) {
    if (!rng.bernoulli(rewire_prob)) continue;
    if (adj[u].size() + 1 >= node_count) continue;  // u already adjacent to everyone
    NodeId w = 0;
    do {
      w = static_cast<NodeId>(rng.below(node_count));
    } while (w == u || adj[u].contains(w));
    adj[u].erase(v);
    adj[v].erase(u);
    adj[u].insert(w);
    adj[w].insert(u);
    v = w;
  }
  return lattice;
}

std::vector<Edge> kregular_edges(std::size_t node_count, std::size_t k, std::uint64_t seed) {
  if (k >= node_count) throw ParameterError("k-regular: k must be below node_count");
  if ((k * node_count) % 2 != 0) throw ParameterError("k-regular: k * node_count must be even");
  Rng rng(seed);
  std::vector<NodeId> points;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> present;
  for (int attempt = 0; attempt < kMaxPairingRestarts; ++attempt) {
    points.clear();
    for (std::size_t u = 0; u < node_count; ++u) points.insert(points.end(), k, static_cast<NodeId>(u));
    edges.clear();
    present.clear();
    bool stuck = false;
    while (!points.empty() && !stuck) {
      // Draw two distinct unpaired points; reject pairs that would form a
      // loop or a multi-edge. After a run of rejections, check exhaustively
      // whether any admissible pair is left.
      bool paired = false;
      for (int tries = 0; tries < 64 && !paired; ++tries) {
        const std::size_t i = rng.below(points.size());
        std::size_t j = rng.below(points.size() - 1);
        if (j >= i) ++j;
        const NodeId a = points[i];
        const NodeId b = points[j];
        if (a == b || present.contains(pair_key(a, b))) continue;
        present.insert(pair_key(a, b));
        edges.emplace_back(a, b);
        const std::size_t hi = std::max(i, j);
        const std::size_t lo = std::min(i, j);
        points[hi] = points.back();
        points.pop_back();
        points[lo] = points.back();
        points.pop_back();
        paired = true;
      }
      if (paired) continue;
      stuck = true;
      for (std::size_t i = 0; i < points.size() && stuck; ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
          if (points[i] != points[j] && !present.contains(pair_key(points[i], points[j]))) {
            stuck = false;
            break;
          }
        }
      }
    }
    if (!stuck) return edges;
  }
  throw GenerationError("k-regular: pairing failed after " + std::to_string(kMaxPairingRestarts) +
                        " restarts");
}

// Union-find over a raw edge list; avoids building a graph for the many
// disconnected draws of a sparse random generator.
bool edges_connect(std::size_t node_count, const std::vector<Edge>& edges) {
  if (node_count <= 1) return true;
  std::vector<NodeId> parent(node_count);
  for (std::size_t i = 0; i < node_count; ++i) parent[i] = static_cast<NodeId>(i);
  auto root = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = node_count;
  for (const auto& [u, v] : edges) {
    const NodeId a = root(u);
    const NodeId b = root(v);
    if (a == b) continue;
    parent[a] = b;
    if (--components == 1) return true;
  }
  return false;
}

std::vector<Edge> spec_edges(const GeneratorSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case GraphKind::kErdosRenyi: return er_edges(spec.node_count, spec.size_param, seed);
    case GraphKind::kBarabasiAlbert: return ba_edges(spec.node_count, spec.size_param, seed);
    case GraphKind::kWattsStrogatz: return ws_edges(spec.node_count, spec.size_param, spec.rewire_prob, seed);
    case GraphKind::kRegular: return kregular_edges(spec.node_count, spec.size_param, seed);
  }
  throw ParameterError("unknown graph kind");
}

}  // namespace

OverlayGraph generate_er(std::size_t node_count, std::size_t edge_count, std::uint64_t seed) {
  return OverlayGraph(node_count, er_edges(node_count, edge_count, seed));
}

OverlayGraph generate_ba(std::size_t node_count, std::size_t edges_per_node, std::uint64_t seed) {
  return OverlayGraph(node_count, ba_edges(node_count, edges_per_node, seed));
}

OverlayGraph generate_ws(std::size_t node_count, std::size_t neighbors_each_side, double rewire_prob,
                         std::uint64_t seed) {
  return OverlayGraph(node_count, ws_edges(node_count, neighbors_each_side, rewire_prob, seed));
}

OverlayGraph generate_kregular(std::size_t node_count, std::size_t k, std::uint64_t seed) {
  return OverlayGraph(node_count, kregular_edges(node_count, k, seed));
}

std::vector<int> bfs_distances(const OverlayGraph& g, NodeId source) {
  std::vector<int> dist(g.node_count(), -1);
  std::vector<NodeId> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId u = frontier[head];
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

bool is_connected(const OverlayGraph& g) {
  if (g.node_count() == 0) return false;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

std::optional<int> diameter(const OverlayGraph& g) {
  int best = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    const auto dist = bfs_distances(g, s);
    for (int d : dist) {
      if (d < 0) return std::nullopt;
      best = std::max(best, d);
    }
  }
  return best;
}

DegreeDistribution empirical_degree_distribution(const OverlayGraph& g) {
  std::vector<double> counts;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::size_t d = g.degree(u);
    if (counts.size() <= d) counts.resize(d + 1, 0.0);
    counts[d] += 1.0;
  }
  const auto n = static_cast<double>(g.node_count());
  for (double& c : counts) c /= n;
  return DegreeDistribution(std::move(counts));
}

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kErdosRenyi: return "er";
    case GraphKind::kBarabasiAlbert: return "ba";
    case GraphKind::kWattsStrogatz: return "ws";
    case GraphKind::kRegular: return "kregular";
  }
  return "?";
}

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "er" || name == "random") return GraphKind::kErdosRenyi;
  if (name == "ba" || name == "scalefree") return GraphKind::kBarabasiAlbert;
  if (name == "ws" || name == "smallworld") return GraphKind::kWattsStrogatz;
  if (name == "kregular" || name == "regular") return GraphKind::kRegular;
  throw ParameterError("unknown graph type '" + name + "' (er, ba, ws, kregular)");
}

void GeneratorSpec::validate() const {
  if (node_count == 0) throw ParameterError("node_count must be positive");
  switch (kind) {
    case GraphKind::kErdosRenyi:
      if (size_param > node_count * (node_count - 1) / 2) throw ParameterError("ER: too many edges");
      break;
    case GraphKind::kBarabasiAlbert:
      if (size_param < 1 || node_count <= size_param) throw ParameterError("BA: need 1 <= m < n");
      break;
    case GraphKind::kWattsStrogatz:
      if (size_param < 1 || 2 * size_param >= node_count) throw ParameterError("WS: need 1 <= k and 2k < n");
      if (!(rewire_prob >= 0.0 && rewire_prob <= 1.0)) throw ParameterError("WS: rewire_prob outside [0,1]");
      break;
    case GraphKind::kRegular:
      if (size_param >= node_count) throw ParameterError("k-regular: k must be below n");
      if ((size_param * node_count) % 2 != 0) throw ParameterError("k-regular: k * n must be even");
      break;
  }
}

OverlayGraph generate(const GeneratorSpec& spec, std::uint64_t seed) {
  return OverlayGraph(spec.node_count, spec_edges(spec, seed));
}

GeneratedGraph generate_connected(const GeneratorSpec& spec, std::uint64_t seed) {
  spec.validate();
  for (std::size_t attempt = 0; attempt < kMaxConnectivityAttempts; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : derive_seed(seed, Stream::kGraph, attempt);
    std::vector<Edge> edges = spec_edges(spec, s);
    if (!edges_connect(spec.node_count, edges)) continue;
    OverlayGraph g(spec.node_count, edges);
    const int d = *diameter(g);
    return GeneratedGraph{std::move(g), seed, s, attempt, d};
  }
  throw GenerationError("no connected graph after " + std::to_string(kMaxConnectivityAttempts) + " attempts");
}

}  // namespace gossip::topology
