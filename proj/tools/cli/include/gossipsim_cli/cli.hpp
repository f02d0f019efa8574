#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gossip::cli {

/// Environment variable naming the default corpus root.
inline constexpr const char* kCorpusRootEnv = "GOSSIPSIM_CORPUS_ROOT";
inline constexpr const char* kDefaultCorpusRoot = "corpora";

/// Runs the command line given without the program name. Returns the exit
/// status: 0 on success, 1 on failed runs or integrity errors, 2 on usage
/// errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Mirrors a CSV document as a JSON array of row objects. Cells that parse
/// as numbers become numbers, "nan" and empty cells become null.
std::string csv_to_json(const std::string& csv);

std::string version();

}  // namespace gossip::cli
