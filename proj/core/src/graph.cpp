#include "gossip/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gossip {

OverlayGraph::OverlayGraph(std::size_t node_count, std::span<const Edge> edges) {
  if (node_count == 0) throw ParameterError("graph needs at least one node");
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) throw ParameterError("edge endpoint out of range");
    if (u == v) throw ParameterError("self-loop on node " + std::to_string(u));
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw ParameterError("duplicate edge " + std::to_string(dup->first) + " " + std::to_string(dup->second));
  }

  offsets_.assign(node_count + 1, 0);
  for (auto [u, v] : edges_) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (auto [u, v] : edges_) adjacency_[cursor[u]++] = v;
  for (auto [u, v] : edges_) adjacency_[cursor[v]++] = u;
  for (std::size_t i = 0; i < node_count; ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]));
  }
}

std::ptrdiff_t OverlayGraph::neighbor_index(NodeId u, NodeId v) const noexcept {
  if (u >= node_count()) return -1;
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return -1;
  return it - nb.begin();
}

void write_graph(std::ostream& out, const OverlayGraph& g) {
  out << "nodes " << g.node_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

OverlayGraph read_graph(std::istream& in) {
  std::string keyword;
  std::size_t n = 0;
  if (!(in >> keyword >> n) || keyword != "nodes") throw FormatError("graph file must start with 'nodes <N>'");
  std::vector<Edge> edges;
  long long u = 0;
  long long v = 0;
  while (in >> u >> v) {
    if (u < 0 || v < 0) throw FormatError("negative node id in graph file");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  if (!in.eof()) throw FormatError("malformed edge line in graph file");
  try {
    return OverlayGraph(n, edges);
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid graph file: ") + e.what());
  }
}

void save_graph(const std::filesystem::path& path, const OverlayGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  write_graph(out, g);
}

OverlayGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  return read_graph(in);
}

std::string to_string(const OverlayGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

}  // namespace gossip
