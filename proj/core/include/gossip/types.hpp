#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gossip {

using NodeId = std::uint32_t;
using MessageId = std::uint32_t;
using Step = std::int64_t;

/// Invalid generator, protocol or simulation parameters.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized generator gave up after its bounded number of attempts.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simulation invariant was violated (message over a non-edge, broken
/// conservation, ...). Always a bug, never a modeled outcome.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed graph, corpus, or trace file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gossip
