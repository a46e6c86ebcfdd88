#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "vlstore/indexed_hash_set.hpp"
#include "vlstore/store.hpp"

namespace vlstore {

struct TreePadConfig {
  std::uint32_t length = 0;  // fixed padded length L, >= 1
  int scale_root = 20;
  int scale_data = 20;  // 4..32: node halves are 32-bit references
};

/// Fixed-length compression tree in the classic array layout: conceptual
/// positions [L, 2L) hold the L padded slots, interior node n pairs
/// positions 2n and 2n+1, nodes are built bottom-up from n = L-1 to the top
/// node 1. Every vector is zero-padded to exactly L slots; the true length
/// rides in the StateID so callers never see the padding. Vectors longer
/// than L are rejected.
///
/// The all-ones 64-bit node value is reserved as an empty marker, so any
/// vector that would build such a node — e.g. one pairing two all-ones
/// slots — is rejected with ReservedValueError. (The sets used here do not
/// actually need a marker; the restriction models the layout faithfully.)
class TreePadStore final : public StateStore {
public:
  explicit TreePadStore(TreePadConfig cfg);

  InsertResult insert(std::span<const Slot> v, bool root) override;
  Vector get(StateID id, bool root) const override;
  Vector get_partial(StateID id, std::uint32_t offset, std::uint32_t length,
                     bool root) const override;
  InsertResult delta(StateID id, std::uint32_t offset, std::span<const Slot> d,
                     bool root) override;
  InsertResult delta_sparse(StateID id, const SparseDeltaList& deltas,
                            bool root) override;
  StoreStats stats() const override;
  std::string name() const override { return "treedbs_pad"; }

  std::uint32_t configured_length() const { return length_; }

private:
  Vector reconstruct(StateID id, bool root) const;

  std::uint32_t length_;
  IndexedHashSet roots_;
  IndexedHashSet data_;
};

}  // namespace vlstore
