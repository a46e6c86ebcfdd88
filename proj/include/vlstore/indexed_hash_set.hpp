#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

#include "vlstore/core.hpp"

namespace vlstore {

struct SetConfig {
  int scale = 20;  // capacity = 2^scale buckets
};

struct SetStats {
  std::uint64_t occupancy = 0;
  std::uint64_t capacity = 0;
  /// occupancy * kEntryBytes: 8 payload bytes plus 4 bytes of tag/occupancy
  /// metadata per occupied bucket.
  std::uint64_t memory_bytes = 0;
  /// capacity * kEntryBytes, the preallocated footprint.
  std::uint64_t allocated_bytes = 0;
};

/// Fixed-capacity concurrent set of 64-bit values, each value paired with a
/// 24-bit tag. Equal (value, tag) pairs map to one stable index; insertion
/// is the only mutation. Open addressing with linear probing; the index of
/// an entry is its final bucket position, so indices fit in `scale` bits.
///
/// Occupancy lives in a separate per-bucket status word, never in the value
/// array, so every 64-bit pattern is storable (no reserved empty value).
class IndexedHashSet {
public:
  static constexpr std::uint64_t kEntryBytes = 8 + 4;

  struct InsertOutcome {
    std::uint64_t index = 0;
    bool is_new = false;
  };

  struct Entry {
    std::uint64_t value = 0;
    std::uint32_t tag = 0;
  };

  explicit IndexedHashSet(SetConfig cfg);

  IndexedHashSet(const IndexedHashSet&) = delete;
  IndexedHashSet& operator=(const IndexedHashSet&) = delete;

  /// Maps (value, tag) to its index, claiming a fresh bucket if absent.
  /// Exactly one concurrent caller observes is_new = true per distinct pair.
  /// Throws CapacityError once a full probe cycle finds no free bucket.
  InsertOutcome insert_if_absent(std::uint64_t value, std::uint32_t tag = 0);

  /// Returns the pair stored at `index`. Throws UnknownIdError if the bucket
  /// was never claimed.
  Entry read(std::uint64_t index) const;

  std::uint64_t occupancy() const {
    return size_.load(std::memory_order_relaxed);
  }
  std::uint64_t capacity() const { return mask_ + 1; }
  int scale() const { return scale_; }

  SetStats stats() const;

private:
  // Bucket status word: zero = empty; kClaimed set while the value store is
  // in flight; kPublished set once (value, tag) is readable. Low 24 bits
  // hold the tag.
  static constexpr std::uint32_t kClaimed = 1u << 31;
  static constexpr std::uint32_t kPublished = 1u << 30;
  static constexpr std::uint32_t kTagMask = (1u << 24) - 1;

  std::uint32_t wait_published(std::uint64_t bucket,
                               std::uint32_t status) const;

  int scale_;
  std::uint64_t mask_;
  std::unique_ptr<std::atomic<std::uint64_t>[]> values_;
  std::unique_ptr<std::atomic<std::uint32_t>[]> status_;
  std::atomic<std::uint64_t> size_{0};
};

/// 64-bit mixer over (value, tag); fixed for the lifetime of the process,
/// so indices are run-local.
constexpr std::uint64_t mix_hash(std::uint64_t value, std::uint32_t tag) {
  std::uint64_t x = value + 0x9E3779B97F4A7C15ull * (tag + 1ull);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

}  // namespace vlstore
