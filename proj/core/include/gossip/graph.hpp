#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gossip/types.hpp"

namespace gossip {

using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph on nodes 0..n-1.
///
/// Adjacency is stored in compressed-row form with each neighbor list sorted
/// ascending, so neighbor iteration order (and hence every random draw made
/// while iterating) is a pure function of the edge set.
class OverlayGraph {
 public:
  OverlayGraph() = default;

  /// Validates the edge list: ids in range, no self-loops, no duplicates
  /// (in either orientation). Throws ParameterError otherwise.
  OverlayGraph(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId u) const noexcept {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }

  /// Position of v in u's neighbor list, or -1 when {u,v} is not an edge.
  std::ptrdiff_t neighbor_index(NodeId u, NodeId v) const noexcept;
  bool has_edge(NodeId u, NodeId v) const noexcept { return neighbor_index(u, v) >= 0; }

  /// Canonical edge list: u < v, ascending lexicographic.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  friend bool operator==(const OverlayGraph& a, const OverlayGraph& b) {
    return a.offsets_ == b.offsets_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<Edge> edges_;
};

// Text format: "nodes <N>" followed by one "u v" line per edge, u < v,
// ascending. Output is canonical so two equal graphs serialize identically.
void write_graph(std::ostream& out, const OverlayGraph& g);
OverlayGraph read_graph(std::istream& in);
void save_graph(const std::filesystem::path& path, const OverlayGraph& g);
OverlayGraph load_graph(const std::filesystem::path& path);
std::string to_string(const OverlayGraph& g);

}  // namespace gossip
