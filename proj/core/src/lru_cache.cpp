#include "gossip/lru_cache.hpp"

#include <bit>

namespace gossip::protocol {

LruCache::LruCache(std::size_t capacity) {
  if (capacity < 1) throw ParameterError("cache capacity must be >= 1");
  if (capacity >= kNone / 2) throw ParameterError("cache capacity too large");
  slots_.resize(capacity);
  const std::size_t buckets = std::bit_ceil(capacity * 2);
  table_.assign(buckets, kNone);
  mask_ = buckets - 1;
  shift_ = 64 - std::countr_zero(buckets);
}

std::uint32_t LruCache::find(MessageId id) const noexcept {
  for (std::size_t b = bucket_of(id) & mask_;; b = (b + 1) & mask_) {
    const std::uint32_t s = table_[b];
    if (s == kNone) return kNone;
    if (slots_[s].id == id) return s;
  }
}

void LruCache::table_insert(MessageId id, std::uint32_t slot) noexcept {
  std::size_t b = bucket_of(id) & mask_;
  while (table_[b] != kNone) b = (b + 1) & mask_;
  table_[b] = slot;
}

void LruCache::table_erase(MessageId id) noexcept {
  std::size_t b = bucket_of(id) & mask_;
  while (slots_[table_[b]].id != id) b = (b + 1) & mask_;
  // Backward-shift deletion keeps probe chains intact without tombstones.
  std::size_t hole = b;
  for (std::size_t j = (hole + 1) & mask_; table_[j] != kNone; j = (j + 1) & mask_) {
    const std::size_t home = bucket_of(slots_[table_[j]].id) & mask_;
    // Move j into the hole unless its home lies cyclically in (hole, j].
    const bool home_between = hole <= j ? (hole < home && home <= j) : (hole < home || home <= j);
    if (!home_between) {
      table_[hole] = table_[j];
      hole = j;
    }
  }
  table_[hole] = kNone;
}

void LruCache::unlink(std::uint32_t s) noexcept {
  const auto [id, prev, next] = slots_[s];
  (prev == kNone ? head_ : slots_[prev].next) = next;
  (next == kNone ? tail_ : slots_[next].prev) = prev;
}

void LruCache::push_front(std::uint32_t s) noexcept {
  slots_[s].prev = kNone;
  slots_[s].next = head_;
  if (head_ != kNone) slots_[head_].prev = s;
  head_ = s;
  if (tail_ == kNone) tail_ = s;
}

bool LruCache::touch(MessageId id) noexcept {
  const std::uint32_t s = find(id);
  if (s == kNone) return false;
  if (s != head_) {
    unlink(s);
    push_front(s);
  }
  return true;
}

std::optional<MessageId> LruCache::insert(MessageId id) noexcept {
  if (touch(id)) return std::nullopt;
  std::optional<MessageId> evicted;
  std::uint32_t s = 0;
  if (size_ < slots_.size()) {
    s = static_cast<std::uint32_t>(size_++);
  } else {
    s = tail_;
    evicted = slots_[s].id;
    unlink(s);
    table_erase(*evicted);
  }
  slots_[s].id = id;
  table_insert(id, s);
  push_front(s);
  return evicted;
}

std::vector<MessageId> LruCache::entries() const {
  std::vector<MessageId> out;
  out.reserve(size_);
  for (std::uint32_t s = head_; s != kNone; s = slots_[s].next) out.push_back(slots_[s].id);
  return out;
}

}  // namespace gossip::protocol
