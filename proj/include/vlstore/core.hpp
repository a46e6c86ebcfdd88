#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlstore {

/// One 32-bit unit of a state vector. Any bit pattern is legal, including
/// all-ones.
using Slot = std::uint32_t;

/// A state is a non-empty sequence of slots.
using Vector = std::vector<Slot>;

/// Lengths travel in the low 24 bits of a StateID.
inline constexpr std::uint32_t kMaxStateLength = (1u << 24) - 1;

/// Set indices travel in the high 40 bits of a StateID.
inline constexpr int kMinSetScale = 4;
inline constexpr int kMaxSetScale = 40;

// ---------------------------------------------------------------------------
// Errors

class StoreError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A set ran out of buckets (no resizing; capacity is fixed at construction).
class CapacityError : public StoreError {
public:
  using StoreError::StoreError;
};

/// Vector length outside [1, kMaxStateLength], or beyond a fixed-length
/// store's configured length.
class LengthError : public StoreError {
public:
  using StoreError::StoreError;
};

/// Offset/length slice outside the addressed state.
class BoundsError : public StoreError {
public:
  using StoreError::StoreError;
};

/// Index does not refer to an occupied entry (or tag mismatch).
class UnknownIdError : public StoreError {
public:
  using StoreError::StoreError;
};

/// Sparse delta list violates the sorted/non-overlapping precondition.
class DeltaListError : public StoreError {
public:
  using StoreError::StoreError;
};

/// Bad construction parameters (scale out of range, missing pad length, ...).
class ConfigError : public StoreError {
public:
  using StoreError::StoreError;
};

/// A fixed-length tree store was asked to form the 64-bit value it reserves
/// as its empty-bucket marker.
class ReservedValueError : public StoreError {
public:
  using StoreError::StoreError;
};

// ---------------------------------------------------------------------------
// StateID

/// Packed 64-bit handle for a stored state: 40-bit set index in the high
/// bits, 24-bit slot count in the low bits. Run-local; ids from different
/// runs or stores are not comparable.
class StateID {
public:
  static constexpr int kLengthBits = 24;
  static constexpr std::uint64_t kLengthMask = (1ull << kLengthBits) - 1;

  constexpr StateID() = default;
  constexpr StateID(std::uint64_t index, std::uint32_t length)
      : raw_((index << kLengthBits) | (length & kLengthMask)) {}

  static constexpr StateID from_raw(std::uint64_t raw) {
    StateID id;
    id.raw_ = raw;
    return id;
  }

  constexpr std::uint64_t index() const { return raw_ >> kLengthBits; }
  constexpr std::uint32_t length() const {
    return static_cast<std::uint32_t>(raw_ & kLengthMask);
  }
  constexpr std::uint64_t raw() const { return raw_; }

  friend constexpr bool operator==(StateID a, StateID b) {
    return a.raw_ == b.raw_;
  }
  friend constexpr bool operator!=(StateID a, StateID b) {
    return a.raw_ != b.raw_;
  }

private:
  std::uint64_t raw_ = 0;
};

struct InsertResult {
  StateID id;
  bool is_new = false;
};

// ---------------------------------------------------------------------------
// Sparse deltas and recursive paths

/// One overlay: `data` replaces the slots at [offset, offset + data.size()).
struct SparseDelta {
  std::uint32_t offset = 0;
  Vector data;
};

/// Overlays sorted by offset, non-overlapping. Validated on use.
using SparseDeltaList = std::vector<SparseDelta>;

/// Offsets descending through a tree of states. All but the last (for reads)
/// locate a 2-slot embedded StateID at that nesting level.
using OffsetPath = std::vector<std::uint32_t>;

/// Throws DeltaListError unless offsets are strictly ascending and entries
/// non-overlapping, LengthError if an entry is empty or the list extends a
/// state past kMaxStateLength.
void validate_sparse_deltas(const SparseDeltaList& deltas);

/// Result length of applying `deltas` (already validated) to a state of
/// `base_length` slots.
std::uint32_t overlaid_length(std::uint32_t base_length,
                              const SparseDeltaList& deltas);

/// Materializes the overlay of `deltas` (validated by the caller) onto
/// `base`: the result has overlaid_length slots and any gap past the end of
/// `base` is zero-filled.
Vector apply_sparse(std::span<const Slot> base, const SparseDeltaList& deltas);

// ---------------------------------------------------------------------------
// Tree arithmetic and node packing

/// Largest power of two strictly smaller than x. Determines how many slots
/// the left child of a node spans. Requires x >= 2.
constexpr std::uint32_t lpst(std::uint32_t x) { return std::bit_floor(x - 1); }

/// A tree node packs two 32-bit halves; the half covering the lower slot
/// offsets sits in the high bits.
constexpr std::uint64_t pack_node(std::uint32_t first, std::uint32_t second) {
  return (static_cast<std::uint64_t>(first) << 32) | second;
}
constexpr std::uint32_t node_first(std::uint64_t node) {
  return static_cast<std::uint32_t>(node >> 32);
}
constexpr std::uint32_t node_second(std::uint64_t node) {
  return static_cast<std::uint32_t>(node);
}

// ---------------------------------------------------------------------------
// StateIDs embedded in vectors

/// A StateID occupies two consecutive slots inside a state: low 32 bits
/// first, high 32 bits second.
constexpr void encode_state_id(StateID id, Slot& lo, Slot& hi) {
  lo = static_cast<Slot>(id.raw());
  hi = static_cast<Slot>(id.raw() >> 32);
}

constexpr StateID decode_state_id(Slot lo, Slot hi) {
  return StateID::from_raw((static_cast<std::uint64_t>(hi) << 32) | lo);
}

inline Vector encode_state_id(StateID id) {
  Vector v(2);
  encode_state_id(id, v[0], v[1]);
  return v;
}

}  // namespace vlstore
