#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gossip/gossip_function.hpp"
#include "gossip/lru_cache.hpp"
#include "gossip/rng.hpp"
#include "gossip/types.hpp"

namespace gossip::protocol {

struct Message {
  MessageId id = 0;
  NodeId origin = 0;
  Step created_at = 0;
  int ttl_remaining = 0;
  int hops_traversed = 0;
  int sender_degree = 0;  // piggybacked static degree of the forwarding node
};

enum class Variant { kFixedProbability, kProbabilisticBroadcast, kDdf1, kDdf2 };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

struct ProtocolConfig {
  Variant variant = Variant::kFixedProbability;
  double parameter = 1.0;  // gamma, beta, or alpha depending on variant
  int initial_ttl = 16;
  /// true: never send back to the neighbor a message arrived from.
  /// false: iterate every neighbor, as in the plain gossip loop.
  bool exclude_sender = true;
  /// true: a first arrival with ttl 0 still counts as a reception and is
  /// cached. false: such arrivals are ignored entirely.
  bool count_expired_arrivals = true;
  /// true: a duplicate arrival moves its id to the most-recently-used
  /// position. false: the duplicate check is a plain lookup and recency only
  /// changes on insertion. Refreshing on duplicates roughly halves the
  /// effective cache window under heavy load and lets evicted messages
  /// re-flood.
  bool refresh_on_duplicate = false;

  void validate() const;
  /// DDF1/DDF2 as a GossipFunction; kFixed(parameter) for FP.
  GossipFunction gossip_function() const;
};

/// Per-node protocol state. Neighbor degree knowledge is aligned with the
/// node's sorted adjacency list (-1 = not yet learned).
struct NodeState {
  NodeId node_id = 0;
  LruCache cache;
  std::vector<int> neighbor_degrees;
  bool is_free_rider = false;
  Step next_generation_at = 0;

  NodeState(NodeId id, std::size_t cache_capacity, std::size_t degree)
      : node_id(id), cache(cache_capacity), neighbor_degrees(degree, -1) {}
};

/// Read-only view of the local topology handed to the protocol callbacks.
struct LocalView {
  std::span<const NodeId> neighbors;  // sorted ascending
  int degree = 0;
};

/// One outgoing dissemination: the same message copy to every target.
struct Dissemination {
  Message copy;
  std::vector<NodeId> targets;
};

struct ReceiveResult {
  bool received_first_time = false;  // not in cache at arrival
  bool counted = false;              // counts as a reception for coverage
};

// Forwarding rules. All of them draw exactly one uniform per eligible
// neighbor (FP, DDF) or one per decision (PB), in neighbor order, so equal
// probabilities under equal generator state pick equal sets.

void forward_fp(std::span<const NodeId> neighbors, double gamma, std::optional<NodeId> exclude,
                Rng& rng, std::vector<NodeId>& out);

void forward_pb(std::span<const NodeId> neighbors, double beta, bool first_transmission,
                std::optional<NodeId> exclude, Rng& rng, std::vector<NodeId>& out);

/// Neighbors whose degree is unknown (-1) are always selected, but still
/// consume their draw.
void forward_ddf(std::span<const NodeId> neighbors, const GossipFunction& fn,
                 std::span<const int> neighbor_degrees, std::optional<NodeId> exclude, Rng& rng,
                 std::vector<NodeId>& out);

/// Creates and caches a fresh message, then disseminates it as a first
/// transmission (no sender exclusion, PB always broadcasts).
Message on_generate(NodeState& state, const LocalView& view, MessageId id, Step now,
                    const ProtocolConfig& cfg, Rng& rng, Dissemination& out);

/// Handles an arrival over the edge (sender -> state.node_id). `out.targets`
/// is cleared and filled with the forwarding decision.
ReceiveResult on_receive(NodeState& state, const LocalView& view, NodeId sender,
                         const Message& msg, const ProtocolConfig& cfg, Rng& rng,
                         Dissemination& out);

}  // namespace gossip::protocol
