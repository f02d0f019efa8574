#pragma once

#include <cstddef>
#include <functional>

namespace gossip {

/// Resolves a thread-count flag: 0 means hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested) noexcept;

/// Fork-join over indices [0, count), work handed out dynamically. Every
/// worker joins before returning; the exception of the lowest failing index
/// is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace gossip
