#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "vlstore/indexed_hash_set.hpp"
#include "vlstore/store.hpp"

namespace vlstore {

struct DTreeConfig {
  int scale_root = 20;  // log2 capacity of the root set, 4..40
  int scale_data = 20;  // log2 capacity of the data set, 4..32
};

/// Compressing variable-length state storage.
///
/// A vector is folded bottom-up into a balanced binary tree of 64-bit nodes.
/// Leaf-most nodes pack two adjacent slots; interior nodes pack the data-set
/// indices of their children; the top node of a state goes to the root set
/// (keyed together with the state's length) when the state is stored as a
/// root, otherwise to the data set like any interior node. A node covering
/// k >= 2 slots always gives its left child the largest power of two below
/// k, so a subtree's shape depends on its width alone and equal sub-vectors
/// collapse to a single shared entry across all states and offsets.
///
/// One-slot segments produce no node: the slot value itself sits in the
/// parent's half. A one-slot state stores the node (slot, 0).
///
/// Because interior nodes pack two 32-bit data indices, scale_data is capped
/// at 32. Newness of non-root inserts is advisory: the top node of a
/// non-root state may already exist as an interior node of another state.
class DTree final : public StateStore {
public:
  explicit DTree(DTreeConfig cfg = {});

  InsertResult insert(std::span<const Slot> v, bool root) override;
  Vector get(StateID id, bool root) const override;
  Vector get_partial(StateID id, std::uint32_t offset, std::uint32_t length,
                     bool root) const override;
  InsertResult delta(StateID id, std::uint32_t offset, std::span<const Slot> d,
                     bool root) override;
  InsertResult delta_sparse(StateID id, const SparseDeltaList& deltas,
                            bool root) override;
  StoreStats stats() const override;
  std::string name() const override { return "dtree"; }

private:
  std::uint32_t build_ref(std::span<const Slot> v, std::uint32_t lo,
                          std::uint32_t len);
  std::uint64_t read_top(StateID id, bool root) const;
  InsertResult publish_top(std::uint64_t top, std::uint32_t length, bool root);
  void gather(std::uint32_t ref, std::uint32_t lo, std::uint32_t len,
              std::uint32_t a, std::uint32_t b, Vector& out) const;

  IndexedHashSet roots_;
  IndexedHashSet data_;
};

}  // namespace vlstore
