#include <algorithm>
#include <fstream>
#include <json.hpp>

#include "gossip/parallel.hpp"
#include "gossip/topology.hpp"

namespace gossip::topology {

int Corpus::max_diameter() const {
  int best = 0;
  for (const auto& m : members) best = std::max(best, m.diameter);
  return best;
}

Corpus build_corpus(const GeneratorSpec& spec, std::size_t count, std::uint64_t base_seed, std::string name,
                    unsigned threads) {
  if (count < 1) throw ParameterError("corpus needs at least one graph");
  spec.validate();
  Corpus corpus{std::move(name), spec, base_seed, std::vector<GeneratedGraph>(count)};
  parallel_for(count, threads, [&](std::size_t i) {
    try {
      corpus.members[i] = generate_connected(spec, base_seed + i);
    } catch (const std::exception& e) {
      throw GenerationError("corpus graph " + std::to_string(i) + ": " + e.what());
    }
  });
  return corpus;
}

namespace {

std::string graph_file(std::size_t index) { return "graph-" + std::to_string(index) + ".edges"; }

const char* size_param_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::kErdosRenyi: return "edges";
    case GraphKind::kBarabasiAlbert: return "edges_per_node";
    case GraphKind::kWattsStrogatz: return "neighbors_each_side";
    case GraphKind::kRegular: return "k";
  }
  return "size";
}

}  // namespace

void save_corpus(const Corpus& corpus, const std::filesystem::path& dir, bool overwrite) {
  namespace fs = std::filesystem;
  if (fs::exists(dir)) {
    if (!overwrite) throw ParameterError("corpus directory " + dir.string() + " already exists");
    fs::remove_all(dir);
  }
  fs::create_directories(dir);

  nlohmann::ordered_json meta;
  meta["name"] = corpus.name;
  meta["generator"] = {{"type", to_string(corpus.spec.kind)},
                       {"nodes", corpus.spec.node_count},
                       {size_param_name(corpus.spec.kind), corpus.spec.size_param},
                       {"rewire_prob", corpus.spec.rewire_prob}};
  meta["base_seed"] = corpus.base_seed;
  meta["count"] = corpus.members.size();
  meta["max_diameter"] = corpus.max_diameter();
  auto& graphs = meta["graphs"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < corpus.members.size(); ++i) {
    const auto& m = corpus.members[i];
    std::size_t min_deg = m.graph.node_count() ? m.graph.degree(0) : 0;
    std::size_t max_deg = 0;
    for (NodeId u = 0; u < m.graph.node_count(); ++u) {
      min_deg = std::min(min_deg, m.graph.degree(u));
      max_deg = std::max(max_deg, m.graph.degree(u));
    }
    graphs.push_back({{"file", graph_file(i)},
                      {"seed", m.seed},
                      {"used_seed", m.used_seed},
                      {"rejections", m.rejections},
                      {"edges", m.graph.edge_count()},
                      {"diameter", m.diameter},
                      {"min_degree", min_deg},
                      {"max_degree", max_deg}});
    save_graph(dir / graph_file(i), m.graph);
  }
  std::ofstream out(dir / "meta", std::ios::binary);
  out << meta.dump(2) << '\n';
  if (!out) throw FormatError("cannot write corpus meta in " + dir.string());
}

Corpus load_corpus(const std::filesystem::path& dir) {
  std::ifstream in(dir / "meta", std::ios::binary);
  if (!in) throw FormatError("no corpus meta in " + dir.string());
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(in);
    Corpus corpus;
    corpus.name = meta.at("name").get<std::string>();
    const auto& gen = meta.at("generator");
    corpus.spec.kind = parse_graph_kind(gen.at("type").get<std::string>());
    corpus.spec.node_count = gen.at("nodes").get<std::size_t>();
    corpus.spec.size_param = gen.at(size_param_name(corpus.spec.kind)).get<std::size_t>();
    corpus.spec.rewire_prob = gen.at("rewire_prob").get<double>();
    corpus.base_seed = meta.at("base_seed").get<std::uint64_t>();
    for (const auto& g : meta.at("graphs")) {
      GeneratedGraph m;
      m.graph = load_graph(dir / g.at("file").get<std::string>());
      if (m.graph.node_count() != corpus.spec.node_count) {
        throw FormatError("corpus member node count differs from generator spec");
      }
      m.seed = g.at("seed").get<std::uint64_t>();
      m.used_seed = g.at("used_seed").get<std::uint64_t>();
      m.rejections = g.at("rejections").get<std::size_t>();
      m.diameter = g.at("diameter").get<int>();
      corpus.members.push_back(std::move(m));
    }
    return corpus;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("bad corpus meta in " + dir.string() + ": " + e.what());
  }
}

}  // namespace gossip::topology
