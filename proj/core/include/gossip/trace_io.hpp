#pragma once

#include <filesystem>
#include <string>

#include "gossip/engine.hpp"

namespace gossip::engine {

// Line records, in simulation order:
//   G <msgid> <origin> <step> <ttl>
//   D <msgid> <receiver> <hops> <step> <first:0|1>
// The trace must have been recorded with record_deliveries.

std::string format_trace(const EventTrace& trace);

/// Writes gzip when `gzip` is set, plain text otherwise.
void write_trace(const std::filesystem::path& path, const EventTrace& trace, bool gzip);

/// Reads plain or gzip (detected by magic bytes). Tallies are rebuilt from
/// the D records.
EventTrace read_trace(const std::filesystem::path& path, std::size_t node_count);
EventTrace parse_trace(const std::string& text, std::size_t node_count);

}  // namespace gossip::engine
