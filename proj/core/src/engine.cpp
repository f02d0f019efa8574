#include "gossip/engine.hpp"

#include <algorithm>
#include <cmath>

#include "gossip/topology.hpp"

namespace gossip::engine {

void SimulationConfig::validate() const {
  protocol.validate();
  if (protocol.initial_ttl >= 0xffff) throw ParameterError("initial TTL too large");
  if (!(total_steps > protocol.initial_ttl)) throw ParameterError("total_steps must exceed the initial TTL");
  if (!(mean_generation_interval > 0.0)) throw ParameterError("mean generation interval must be positive");
  if (cache_capacity < 1) throw ParameterError("cache capacity must be >= 1");
  if (!(overhead_ceiling >= 0.0)) throw ParameterError("overhead ceiling must be >= 0");
  if (!(free_rider_fraction >= 0.0 && free_rider_fraction < 1.0)) {
    throw ParameterError("free rider fraction must lie in [0,1)");
  }
}

std::vector<NodeId> assign_free_riders(std::size_t node_count, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction < 1.0)) throw ParameterError("free rider fraction must lie in [0,1)");
  const auto count = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(node_count)));
  // Partial Fisher-Yates.
  std::vector<NodeId> ids(node_count);
  for (std::size_t i = 0; i < node_count; ++i) ids[i] = static_cast<NodeId>(i);
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    std::swap(ids[i], ids[i + rng.below(node_count - i)]);
  }
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Step next_interarrival(Rng& rng, double mean_interval) {
  return std::max<Step>(1, std::llround(rng.exponential(mean_interval)));
}

namespace {

Step first_generation(Rng& rng, double mean_interval) { return std::llround(rng.exponential(mean_interval)); }

}  // namespace

std::vector<Step> generation_schedule(Rng& rng, double mean_interval, Step total_steps, int initial_ttl) {
  if (!(mean_interval > 0.0)) throw ParameterError("mean generation interval must be positive");
  std::vector<Step> out;
  const Step limit = total_steps - initial_ttl;
  for (Step t = first_generation(rng, mean_interval); t < limit; t += next_interarrival(rng, mean_interval)) {
    out.push_back(t);
  }
  return out;
}

namespace {

struct Transit {
  NodeId receiver;
  NodeId sender;
  MessageId message;
  std::uint16_t ttl;
  std::uint16_t hops;
  std::uint32_t sender_degree;
};

// One dissemination of one node within one step; its targets live in a
// shared scratch buffer.
struct Pending {
  MessageId message;
  std::uint16_t ttl;
  std::uint16_t hops;
  std::uint32_t begin;
  std::uint32_t end;
};

class Simulation {
 public:
  Simulation(const OverlayGraph& g, const SimulationConfig& cfg) : g_(g), cfg_(cfg), n_(g.node_count()) {
    words_per_message_ = (n_ + 63) / 64;
    trace_.node_count = n_;
    trace_.has_deliveries = cfg.record_deliveries;

    trace_.free_riders = assign_free_riders(n_, cfg.free_rider_fraction, derive_seed(cfg.seed, Stream::kFreeRiders));
    states_.reserve(n_);
    forward_rng_.reserve(n_);
    for (NodeId u = 0; u < n_; ++u) {
      states_.emplace_back(u, cfg.cache_capacity, g.degree(u));
      forward_rng_.emplace_back(derive_seed(cfg.seed, Stream::kForwarding, u));
    }
    for (NodeId u : trace_.free_riders) states_[u].is_free_rider = true;
    if (cfg.prime_neighbor_degrees) {
      for (NodeId u = 0; u < n_; ++u) {
        const auto nb = g.neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i) states_[u].neighbor_degrees[i] = static_cast<int>(g.degree(nb[i]));
      }
    }

    generation_limit_ = cfg.total_steps - cfg.protocol.initial_ttl;
    if (cfg.injection == Injection::kScheduled) {
      generation_rng_.reserve(n_);
      for (NodeId u = 0; u < n_; ++u) {
        generation_rng_.emplace_back(derive_seed(cfg.seed, Stream::kGeneration, u));
        states_[u].next_generation_at = first_generation(generation_rng_[u], cfg.mean_generation_interval);
      }
    } else {
      NodeId origin = 0;
      if (cfg.single_origin) {
        if (*cfg.single_origin >= n_) throw ParameterError("single-message origin out of range");
        origin = *cfg.single_origin;
      } else {
        Rng pick(derive_seed(cfg.seed, Stream::kSourcePick));
        origin = static_cast<NodeId>(pick.below(n_));
      }
      single_origin_ = origin;
      for (auto& s : states_) s.next_generation_at = -1;
      states_[origin].next_generation_at = 0;
    }
    counts_.assign(n_ + 1, 0);
  }

  EventTrace run() && {
    Step t = 0;
    for (; t < cfg_.total_steps; ++t) {
      step(t, /*allow_generation=*/true);
      if (over_ceiling()) return std::move(trace_);
    }
    // Drain: messages sent at the last step still get delivered.
    for (; !in_flight_.empty(); ++t) {
      step(t, /*allow_generation=*/false);
      if (over_ceiling()) return std::move(trace_);
    }
    if (trace_.total_sends != trace_.total_deliveries) {
      throw IntegrityError("send/delivery conservation violated");
    }
    return std::move(trace_);
  }

 private:
  bool over_ceiling() {
    if (cfg_.overhead_ceiling <= 0.0) return false;
    const double bound = static_cast<double>(std::max<std::size_t>(1, trace_.messages.size())) *
                         static_cast<double>(n_ - 1);
    if (static_cast<double>(trace_.total_sends) <= cfg_.overhead_ceiling * bound) return false;
    trace_.saturated = true;
    return true;
  }

  bool seen(MessageId m, NodeId u) const {
    return (seen_[m * words_per_message_ + u / 64] >> (u % 64)) & 1u;
  }
  void mark_seen(MessageId m, NodeId u) { seen_[m * words_per_message_ + u / 64] |= std::uint64_t{1} << (u % 64); }

  void bucket_arrivals() {
    std::fill(counts_.begin(), counts_.end(), 0);
    for (const Transit& tr : in_flight_) ++counts_[tr.receiver + 1];
    for (std::size_t i = 0; i < n_; ++i) counts_[i + 1] += counts_[i];
    arrivals_.resize(in_flight_.size());
    std::vector<std::size_t> cursor(counts_.begin(), counts_.end() - 1);
    for (const Transit& tr : in_flight_) arrivals_[cursor[tr.receiver]++] = tr;
    in_flight_.clear();
  }

  void step(Step t, bool allow_generation) {
    bucket_arrivals();
    for (NodeId u = 0; u < n_; ++u) {
      pending_.clear();
      scratch_.clear();
      const protocol::LocalView view{g_.neighbors(u), static_cast<int>(g_.degree(u))};
      for (std::size_t i = counts_[u]; i < counts_[u + 1]; ++i) deliver(t, view, arrivals_[i]);
      if (allow_generation && states_[u].next_generation_at == t) generate(t, view, u);
      emit(u, view.degree);
    }
  }

  void deliver(Step t, const protocol::LocalView& view, const Transit& tr) {
    const NodeId u = tr.receiver;
    ++trace_.total_deliveries;
    const protocol::Message msg{tr.message, trace_.messages[tr.message].origin, trace_.messages[tr.message].created_at,
                                tr.ttl, tr.hops, static_cast<int>(tr.sender_degree)};
    const auto result = protocol::on_receive(states_[u], view, tr.sender, msg, cfg_.protocol, forward_rng_[u], out_);
    const bool first = result.counted && !seen(tr.message, u);
    if (first) {
      mark_seen(tr.message, u);
      auto& tally = trace_.tallies[tr.message];
      ++tally.first_receivers;
      tally.hop_sum += tr.hops;
    }
    if (cfg_.record_deliveries) trace_.deliveries.push_back({tr.message, u, tr.hops, t, first});
    queue(out_);
  }

  void generate(Step t, const protocol::LocalView& view, NodeId u) {
    if (t < generation_limit_) {
      const auto id = static_cast<MessageId>(trace_.messages.size());
      trace_.messages.push_back({id, u, t, cfg_.protocol.initial_ttl});
      trace_.tallies.emplace_back();
      seen_.resize(seen_.size() + words_per_message_, 0);
      mark_seen(id, u);
      protocol::on_generate(states_[u], view, id, t, cfg_.protocol, forward_rng_[u], out_);
      queue(out_);
    }
    if (cfg_.injection == Injection::kScheduled) {
      states_[u].next_generation_at = t + next_interarrival(generation_rng_[u], cfg_.mean_generation_interval);
    } else {
      states_[u].next_generation_at = -1;
    }
  }

  void queue(const protocol::Dissemination& d) {
    if (d.targets.empty()) return;
    const auto begin = static_cast<std::uint32_t>(scratch_.size());
    scratch_.insert(scratch_.end(), d.targets.begin(), d.targets.end());
    pending_.push_back({d.copy.id, static_cast<std::uint16_t>(d.copy.ttl_remaining),
                        static_cast<std::uint16_t>(d.copy.hops_traversed), begin,
                        static_cast<std::uint32_t>(scratch_.size())});
  }

  // Sends leave node u in ascending message id; since nodes are visited in
  // ascending id, the stable bucketing by receiver at the next step yields
  // arrivals ordered by (sender, message id).
  void emit(NodeId u, int degree) {
    if (pending_.size() > 1) {
      std::stable_sort(pending_.begin(), pending_.end(),
                       [](const Pending& a, const Pending& b) { return a.message < b.message; });
    }
    for (const Pending& p : pending_) {
      for (std::uint32_t i = p.begin; i < p.end; ++i) {
        in_flight_.push_back({scratch_[i], u, p.message, p.ttl, p.hops, static_cast<std::uint32_t>(degree)});
      }
      trace_.total_sends += p.end - p.begin;
    }
  }

  const OverlayGraph& g_;
  const SimulationConfig& cfg_;
  std::size_t n_;
  std::size_t words_per_message_ = 0;
  Step generation_limit_ = 0;
  std::optional<NodeId> single_origin_;

  std::vector<protocol::NodeState> states_;
  std::vector<Rng> forward_rng_;
  std::vector<Rng> generation_rng_;

  std::vector<Transit> in_flight_;
  std::vector<Transit> arrivals_;
  std::vector<std::size_t> counts_;
  std::vector<Pending> pending_;
  std::vector<NodeId> scratch_;
  protocol::Dissemination out_;
  std::vector<std::uint64_t> seen_;

  EventTrace trace_;
};

}  // namespace

EventTrace run(const OverlayGraph& g, const SimulationConfig& cfg) {
  cfg.validate();
  if (!topology::is_connected(g)) throw ParameterError("simulation requires a connected graph");
  return Simulation(g, cfg).run();
}

}  // namespace gossip::engine
