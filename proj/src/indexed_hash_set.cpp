#include "vlstore/indexed_hash_set.hpp"

#include <new>
#include <thread>

namespace vlstore {

IndexedHashSet::IndexedHashSet(SetConfig cfg) : scale_(cfg.scale) {
  if (cfg.scale < kMinSetScale || cfg.scale > kMaxSetScale) {
    throw ConfigError("set scale must be in [" + std::to_string(kMinSetScale) +
                      ", " + std::to_string(kMaxSetScale) + "], got " +
                      std::to_string(cfg.scale));
  }
  const std::uint64_t capacity = 1ull << cfg.scale;
  mask_ = capacity - 1;
  try {
    values_ = std::make_unique<std::atomic<std::uint64_t>[]>(capacity);
    status_ = std::make_unique<std::atomic<std::uint32_t>[]>(capacity);
  } catch (const std::bad_alloc&) {
    throw ConfigError("cannot preallocate 2^" + std::to_string(cfg.scale) +
                      " buckets");
  }
}

std::uint32_t IndexedHashSet::wait_published(std::uint64_t bucket,
                                             std::uint32_t status) const {
  // The claimant publishes right after one value store; this spin is short.
  while (!(status & kPublished)) {
    std::this_thread::yield();
    status = status_[bucket].load(std::memory_order_acquire);
  }
  return status;
}

IndexedHashSet::InsertOutcome IndexedHashSet::insert_if_absent(
    std::uint64_t value, std::uint32_t tag) {
  const std::uint64_t start = mix_hash(value, tag);
  for (std::uint64_t probe = 0; probe <= mask_; ++probe) {
    const std::uint64_t bucket = (start + probe) & mask_;
    std::uint32_t status = status_[bucket].load(std::memory_order_acquire);
    if (status == 0) {
      std::uint32_t expected = 0;
      if (status_[bucket].compare_exchange_strong(expected, kClaimed,
                                                  std::memory_order_acq_rel,
                                                  std::memory_order_acquire)) {
        values_[bucket].store(value, std::memory_order_relaxed);
        status_[bucket].store(kPublished | tag, std::memory_order_release);
        size_.fetch_add(1, std::memory_order_relaxed);
        return {bucket, true};
      }
      status = expected;
    }
    status = wait_published(bucket, status);
    if ((status & kTagMask) == tag &&
        values_[bucket].load(std::memory_order_relaxed) == value) {
      return {bucket, false};
    }
  }
  throw CapacityError("indexed hash set full (2^" + std::to_string(scale_) +
                      " buckets)");
}

IndexedHashSet::Entry IndexedHashSet::read(std::uint64_t index) const {
  if (index > mask_) {
    throw UnknownIdError("index " + std::to_string(index) +
                         " past set capacity");
  }
  const std::uint32_t status = status_[index].load(std::memory_order_acquire);
  if (!(status & kPublished)) {
    throw UnknownIdError("index " + std::to_string(index) + " unoccupied");
  }
  return {values_[index].load(std::memory_order_relaxed), status & kTagMask};
}

SetStats IndexedHashSet::stats() const {
  SetStats s;
  s.occupancy = occupancy();
  s.capacity = capacity();
  s.memory_bytes = s.occupancy * kEntryBytes;
  s.allocated_bytes = s.capacity * kEntryBytes;
  return s;
}

}  // namespace vlstore
