#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "gossip/engine.hpp"
#include "gossip/topology.hpp"
#include "json.hpp"

namespace gossip::cli {

using Json = nlohmann::ordered_json;

Json config_json(const engine::SimulationConfig& cfg);
Json spec_json(const topology::GeneratorSpec& spec);
Json corpus_json(const topology::Corpus& corpus);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Writes `csv` to `path` (plus a .json mirror when `json`), or prints it
/// (as JSON when `json`) when no path is given.
void emit_csv(const std::string& csv, const std::optional<std::filesystem::path>& path, bool json,
              std::ostream& out);

/// <path>.meta.json next to an output file.
void write_sidecar(const std::filesystem::path& path, const Json& meta);

}  // namespace gossip::cli
