#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gossip/types.hpp"

namespace gossip::protocol {

/// Fixed-capacity LRU set of message ids.
///
/// Slots form an intrusive doubly linked recency list; an open-addressing
/// table (linear probing, backward-shift deletion) maps ids to slots. All
/// operations are O(1) and allocation-free after construction.
class LruCache {
 public:
  explicit LruCache(std::size_t capacity);

  std::size_t capacity() const noexcept { return slots_.size(); }
  std::size_t size() const noexcept { return size_; }

  /// Membership test without touching recency.
  bool contains(MessageId id) const noexcept { return find(id) != kNone; }

  /// If present, moves id to the most-recently-used position.
  bool touch(MessageId id) noexcept;

  /// Inserts id as most recently used (a touch if already present).
  /// Returns the evicted id when the cache was full.
  std::optional<MessageId> insert(MessageId id) noexcept;

  /// Ids ordered most-recently-used first.
  std::vector<MessageId> entries() const;

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  struct Slot {
    MessageId id;
    std::uint32_t prev;
    std::uint32_t next;
  };

  std::size_t bucket_of(MessageId id) const noexcept {
    return static_cast<std::size_t>((static_cast<std::uint64_t>(id) * 0x9e3779b97f4a7c15ULL) >> shift_);
  }
  std::uint32_t find(MessageId id) const noexcept;
  void table_erase(MessageId id) noexcept;
  void table_insert(MessageId id, std::uint32_t slot) noexcept;
  void unlink(std::uint32_t s) noexcept;
  void push_front(std::uint32_t s) noexcept;

  std::vector<Slot> slots_;
  std::vector<std::uint32_t> table_;  // slot index, kNone when empty
  std::size_t mask_ = 0;
  int shift_ = 0;
  std::uint32_t head_ = kNone;
  std::uint32_t tail_ = kNone;
  std::size_t size_ = 0;
};

}  // namespace gossip::protocol
