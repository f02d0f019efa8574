#include "output.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gossip/protocol.hpp"
#include "gossipsim_cli/cli.hpp"

namespace gossip::cli {
namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Json cell_json(const std::string& cell) {
  if (cell.empty() || cell == "nan" || cell == "-nan") return nullptr;
  char* end = nullptr;
  errno = 0;
  const long long i = std::strtoll(cell.c_str(), &end, 10);
  if (end == cell.c_str() + cell.size() && errno == 0) return i;
  errno = 0;
  const double v = std::strtod(cell.c_str(), &end);
  if (end == cell.c_str() + cell.size() && errno == 0) return v;
  return cell;
}

}  // namespace

std::string csv_to_json(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) return "[]\n";
  const auto header = split_line(line);
  Json rows = Json::array();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    Json row = Json::object();
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = i < cells.size() ? cell_json(cells[i]) : nullptr;
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

Json config_json(const engine::SimulationConfig& cfg) {
  Json p;
  p["variant"] = protocol::to_string(cfg.protocol.variant);
  p["parameter"] = cfg.protocol.parameter;
  p["initial_ttl"] = cfg.protocol.initial_ttl;
  p["exclude_sender"] = cfg.protocol.exclude_sender;
  p["count_expired_arrivals"] = cfg.protocol.count_expired_arrivals;
  p["refresh_on_duplicate"] = cfg.protocol.refresh_on_duplicate;
  Json j;
  j["total_steps"] = cfg.total_steps;
  j["mean_generation_interval"] = cfg.mean_generation_interval;
  j["cache_capacity"] = cfg.cache_capacity;
  j["free_rider_fraction"] = cfg.free_rider_fraction;
  j["seed"] = cfg.seed;
  j["injection"] = cfg.injection == engine::Injection::kScheduled ? "scheduled" : "single";
  if (cfg.single_origin) j["single_origin"] = *cfg.single_origin;
  j["prime_neighbor_degrees"] = cfg.prime_neighbor_degrees;
  j["overhead_ceiling"] = cfg.overhead_ceiling;
  j["protocol"] = std::move(p);
  return j;
}

Json spec_json(const topology::GeneratorSpec& spec) {
  Json j;
  j["type"] = topology::to_string(spec.kind);
  j["nodes"] = spec.node_count;
  j["size_param"] = spec.size_param;
  j["rewire_prob"] = spec.rewire_prob;
  return j;
}

Json corpus_json(const topology::Corpus& corpus) {
  Json j;
  j["name"] = corpus.name;
  j["generator"] = spec_json(corpus.spec);
  j["base_seed"] = corpus.base_seed;
  Json members = Json::array();
  for (const auto& m : corpus.members) members.push_back({{"seed", m.seed}, {"used_seed", m.used_seed}});
  j["members"] = std::move(members);
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

void emit_csv(const std::string& csv, const std::optional<std::filesystem::path>& path, bool json,
              std::ostream& out) {
  if (!path) {
    out << (json ? csv_to_json(csv) : csv);
    return;
  }
  write_text(*path, csv);
  if (json) {
    auto mirror = *path;
    mirror.replace_extension(".json");
    write_text(mirror, csv_to_json(csv));
  }
}

void write_sidecar(const std::filesystem::path& path, const Json& meta) {
  Json j = meta;
  j["version"] = version();
  write_text(path.string() + ".meta.json", j.dump(2) + "\n");
}

}  // namespace gossip::cli
