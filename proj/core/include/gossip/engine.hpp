#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gossip/graph.hpp"
#include "gossip/protocol.hpp"
#include "gossip/rng.hpp"

namespace gossip::engine {

enum class Injection {
  kScheduled,      // every node generates on its exponential schedule
  kSingleMessage,  // exactly one message, generated at step 0
};

struct SimulationConfig {
  Step total_steps = 1000;
  double mean_generation_interval = 10.0;
  std::size_t cache_capacity = 256;
  double free_rider_fraction = 0.0;
  protocol::ProtocolConfig protocol;
  std::uint64_t seed = 1;

  Injection injection = Injection::kScheduled;
  /// kSingleMessage origin; drawn uniformly from the seed when empty.
  std::optional<NodeId> single_origin;
  /// Seed every node's neighbor-degree table before step 0, as if a degree
  /// exchange had already happened. Off by default: degrees are learned only
  /// from piggybacked values.
  bool prime_neighbor_degrees = false;
  /// Keep per-delivery records (memory grows with total sends).
  bool record_deliveries = false;
  /// When positive, the run stops as soon as sends exceed this many times
  /// the spanning-tree bound of the messages generated so far, and the trace
  /// is flagged saturated. Duplicate storms with small caches otherwise cost
  /// minutes per run while only telling us the overhead is huge.
  double overhead_ceiling = 0.0;

  void validate() const;
};

struct GeneratedRecord {
  MessageId id = 0;
  NodeId origin = 0;
  Step created_at = 0;
  int initial_ttl = 0;
  friend bool operator==(const GeneratedRecord&, const GeneratedRecord&) = default;
};

struct DeliveryRecord {
  MessageId message = 0;
  NodeId receiver = 0;
  int hops = 0;
  Step step = 0;
  bool first_time = false;
  friend bool operator==(const DeliveryRecord&, const DeliveryRecord&) = default;
};

/// Per-message aggregate over first-time deliveries to non-origin nodes.
struct MessageTally {
  std::uint32_t first_receivers = 0;
  std::uint64_t hop_sum = 0;
  friend bool operator==(const MessageTally&, const MessageTally&) = default;
};

/// Everything the metrics need from a run. Tallies are always present;
/// individual deliveries only when recorded.
struct EventTrace {
  std::size_t node_count = 0;
  std::vector<GeneratedRecord> messages;  // index == message id
  std::vector<MessageTally> tallies;      // aligned with messages
  std::uint64_t total_sends = 0;
  std::uint64_t total_deliveries = 0;
  bool has_deliveries = false;
  std::vector<DeliveryRecord> deliveries;  // processing order
  std::vector<NodeId> free_riders;         // ascending
  bool saturated = false;                  // stopped at the overhead ceiling

  friend bool operator==(const EventTrace&, const EventTrace&) = default;
};

/// Runs the synchronous simulation. Messages sent at step t are delivered at
/// t+1; within a step every node handles its arrivals (ordered by sender id,
/// then message id) before any generation. After the last step the network
/// is drained with generation disabled so every send is delivered.
EventTrace run(const OverlayGraph& g, const SimulationConfig& cfg);

/// floor(fraction * node_count) distinct ids, uniform, ascending.
std::vector<NodeId> assign_free_riders(std::size_t node_count, double fraction, std::uint64_t seed);

/// max(1, round(Exp(mean))).
Step next_interarrival(Rng& rng, double mean_interval);

/// First generation at round(Exp(mean)), then next_interarrival steps apart,
/// all strictly below total_steps - initial_ttl.
std::vector<Step> generation_schedule(Rng& rng, double mean_interval, Step total_steps, int initial_ttl);

}  // namespace gossip::engine
