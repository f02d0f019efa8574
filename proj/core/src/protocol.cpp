#include "gossip/protocol.hpp"

#include <algorithm>

namespace gossip::protocol {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kFixedProbability: return "fp";
    case Variant::kProbabilisticBroadcast: return "pb";
    case Variant::kDdf1: return "ddf1";
    case Variant::kDdf2: return "ddf2";
  }
  return "?";
}

Variant parse_variant(const std::string& name) {
  if (name == "fp") return Variant::kFixedProbability;
  if (name == "pb") return Variant::kProbabilisticBroadcast;
  if (name == "ddf1") return Variant::kDdf1;
  if (name == "ddf2") return Variant::kDdf2;
  throw ParameterError("unknown protocol '" + name + "' (fp, pb, ddf1, ddf2)");
}

void ProtocolConfig::validate() const {
  switch (variant) {
    case Variant::kFixedProbability:
    case Variant::kProbabilisticBroadcast:
      if (!(parameter >= 0.0 && parameter <= 1.0)) {
        throw ParameterError(to_string(variant) + " probability must lie in [0,1]");
      }
      break;
    case Variant::kDdf1:
    case Variant::kDdf2:
      if (!(parameter > 0.0)) throw ParameterError(to_string(variant) + " alpha must be positive");
      break;
  }
  if (initial_ttl < 1) throw ParameterError("initial TTL must be >= 1");
}

GossipFunction ProtocolConfig::gossip_function() const {
  switch (variant) {
    case Variant::kFixedProbability: return GossipFunction::fixed(parameter);
    case Variant::kDdf1: return GossipFunction::ddf1(parameter);
    case Variant::kDdf2: return GossipFunction::ddf2(parameter);
    case Variant::kProbabilisticBroadcast: break;
  }
  throw ParameterError("probabilistic broadcast has no per-neighbor gossip function");
}

void forward_fp(std::span<const NodeId> neighbors, double gamma, std::optional<NodeId> exclude, Rng& rng,
                std::vector<NodeId>& out) {
  for (NodeId v : neighbors) {
    if (exclude && v == *exclude) continue;
    if (rng.uniform() < gamma) out.push_back(v);
  }
}

void forward_pb(std::span<const NodeId> neighbors, double beta, bool first_transmission,
                std::optional<NodeId> exclude, Rng& rng, std::vector<NodeId>& out) {
  if (first_transmission) {
    out.insert(out.end(), neighbors.begin(), neighbors.end());
    return;
  }
  if (!(rng.uniform() < beta)) return;
  for (NodeId v : neighbors) {
    if (!(exclude && v == *exclude)) out.push_back(v);
  }
}

void forward_ddf(std::span<const NodeId> neighbors, const GossipFunction& fn, std::span<const int> neighbor_degrees,
                 std::optional<NodeId> exclude, Rng& rng, std::vector<NodeId>& out) {
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    const NodeId v = neighbors[i];
    if (exclude && v == *exclude) continue;
    const double u = rng.uniform();
    const int degree = neighbor_degrees[i];
    const double p = degree < 0 ? 1.0 : fn(static_cast<std::size_t>(degree));
    if (u < p) out.push_back(v);
  }
}

namespace {

void disseminate(const NodeState& state, const LocalView& view, const ProtocolConfig& cfg, bool first,
                 std::optional<NodeId> exclude, Rng& rng, std::vector<NodeId>& out) {
  switch (cfg.variant) {
    case Variant::kFixedProbability:
      forward_fp(view.neighbors, cfg.parameter, exclude, rng, out);
      break;
    case Variant::kProbabilisticBroadcast:
      forward_pb(view.neighbors, cfg.parameter, first, exclude, rng, out);
      break;
    case Variant::kDdf1:
      forward_ddf(view.neighbors, GossipFunction::ddf1(cfg.parameter), state.neighbor_degrees, exclude, rng, out);
      break;
    case Variant::kDdf2:
      forward_ddf(view.neighbors, GossipFunction::ddf2(cfg.parameter), state.neighbor_degrees, exclude, rng, out);
      break;
  }
}

}  // namespace

Message on_generate(NodeState& state, const LocalView& view, MessageId id, Step now, const ProtocolConfig& cfg,
                    Rng& rng, Dissemination& out) {
  const Message msg{id, state.node_id, now, cfg.initial_ttl, 0, view.degree};
  state.cache.insert(id);
  // The origin's own send does not consume TTL.
  out.copy = msg;
  out.copy.hops_traversed = 1;
  out.targets.clear();
  disseminate(state, view, cfg, /*first=*/true, std::nullopt, rng, out.targets);
  return msg;
}

ReceiveResult on_receive(NodeState& state, const LocalView& view, NodeId sender, const Message& msg,
                         const ProtocolConfig& cfg, Rng& rng, Dissemination& out) {
  out.targets.clear();
  const auto it = std::lower_bound(view.neighbors.begin(), view.neighbors.end(), sender);
  if (it == view.neighbors.end() || *it != sender) {
    throw IntegrityError("message " + std::to_string(msg.id) + " arrived at node " + std::to_string(state.node_id) +
                         " from non-neighbor " + std::to_string(sender));
  }
  state.neighbor_degrees[static_cast<std::size_t>(it - view.neighbors.begin())] = msg.sender_degree;

  const bool cached = cfg.refresh_on_duplicate ? state.cache.touch(msg.id) : state.cache.contains(msg.id);
  if (cached) return {false, false};
  if (msg.ttl_remaining <= 0) {
    if (!cfg.count_expired_arrivals) return {true, false};
    state.cache.insert(msg.id);
    return {true, true};
  }
  state.cache.insert(msg.id);
  if (state.is_free_rider && msg.origin != state.node_id) return {true, true};

  out.copy = msg;
  out.copy.ttl_remaining = msg.ttl_remaining - 1;
  out.copy.hops_traversed = msg.hops_traversed + 1;
  out.copy.sender_degree = view.degree;
  const std::optional<NodeId> exclude = cfg.exclude_sender ? std::optional<NodeId>(sender) : std::nullopt;
  disseminate(state, view, cfg, /*first=*/false, exclude, rng, out.targets);
  return {true, true};
}

}  // namespace gossip::protocol
