#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "vlstore/core.hpp"

namespace vlstore {

struct StoreStats {
  std::uint64_t root_occupancy = 0;  // complete states held
  std::uint64_t data_occupancy = 0;  // shared non-root entries (0 if flat)
  std::uint64_t node_count = 0;      // root_occupancy + data_occupancy
  std::uint64_t memory_bytes = 0;    // occupied entries only; formula per store
  std::uint64_t allocated_bytes = 0; // preallocated footprint
};

/// Contract shared by every state storage. A state is addressed by the
/// StateID its insert returned together with the same root flag; `root`
/// selects whether the state's top entry lives among complete (root) states
/// or among the shared non-root entries.
///
/// All operations are safe under full concurrency and linearizable with
/// respect to membership and newness: exactly one concurrent inserter of an
/// absent (vector, root) pair observes is_new = true. For root = false the
/// flag is advisory in tree stores (see DTree).
class StateStore {
public:
  virtual ~StateStore() = default;

  /// Stores v; is_new iff (v, root) was absent. 1 <= len(v) <= kMaxStateLength.
  virtual InsertResult insert(std::span<const Slot> v, bool root) = 0;

  /// The exact vector stored under id.
  virtual Vector get(StateID id, bool root) const = 0;

  /// The slice [offset, offset + length) of get(id, root); length >= 1.
  virtual Vector get_partial(StateID id, std::uint32_t offset,
                             std::uint32_t length, bool root) const = 0;

  /// Stores the overlay of d at `offset` onto get(id, root). The result has
  /// length max(id.length, offset + len(d)); a gap [id.length, offset) is
  /// zero-filled. Identical to inserting the overlaid vector.
  virtual InsertResult delta(StateID id, std::uint32_t offset,
                             std::span<const Slot> d, bool root) = 0;

  /// Applies every entry of a sorted, non-overlapping delta list in one
  /// operation; intermediate vectors are not stored.
  virtual InsertResult delta_sparse(StateID id, const SparseDeltaList& deltas,
                                    bool root) = 0;

  /// Follows embedded StateIDs: path[0..n-2] each locate a 2-slot embedded
  /// id at that nesting level (outermost level looked up as a root state,
  /// deeper levels as non-root), then reads `length` slots at path[n-1] of
  /// the innermost state. Path must be non-empty.
  virtual Vector get_recursive(StateID id, const OffsetPath& path,
                               std::uint32_t length) const;

  /// Applies `deltas` to the sub-state reached through `path` (every entry
  /// locates an embedded id), then rewrites the embedding slots at each
  /// enclosing level; the outermost result is a root state. An empty path
  /// degenerates to delta_sparse(id, deltas, true).
  virtual InsertResult delta_recursive_sparse(StateID id,
                                              const OffsetPath& path,
                                              const SparseDeltaList& deltas);

  virtual StoreStats stats() const = 0;

  virtual std::string name() const = 0;
};

}  // namespace vlstore
