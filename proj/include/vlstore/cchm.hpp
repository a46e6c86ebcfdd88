#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "vlstore/store.hpp"

namespace vlstore {

struct CchmConfig {
  int scale = 20;  // log2 bucket count and id-table capacity, 4..40
};

/// Uncompressed baseline: a concurrent chaining hash map from full vectors
/// to assigned indices. Every stored (vector, root) pair owns one chain node
/// holding the complete slot sequence, so memory grows linearly with stored
/// slot count. Delta operations reconstruct, overlay and reinsert.
///
/// Lock-free inserts: a new node is made reachable through the id table
/// before it is CAS-linked into its bucket chain, so an id returned to any
/// caller always resolves. Losing the CAS re-walks the fresher chain and
/// rolls the node back if the vector appeared meanwhile.
class CchmStore final : public StateStore {
public:
  explicit CchmStore(CchmConfig cfg = {});
  ~CchmStore() override;

  CchmStore(const CchmStore&) = delete;
  CchmStore& operator=(const CchmStore&) = delete;

  InsertResult insert(std::span<const Slot> v, bool root) override;
  Vector get(StateID id, bool root) const override;
  Vector get_partial(StateID id, std::uint32_t offset, std::uint32_t length,
                     bool root) const override;
  InsertResult delta(StateID id, std::uint32_t offset, std::span<const Slot> d,
                     bool root) override;
  InsertResult delta_sparse(StateID id, const SparseDeltaList& deltas,
                            bool root) override;
  StoreStats stats() const override;
  std::string name() const override { return "cchm"; }

  /// Bookkeeping charged per stored vector on top of its 4-byte slots:
  /// chain pointer, length/flags word, and the id-table entry.
  static constexpr std::uint64_t kNodeOverheadBytes = 24;

private:
  struct Node;

  static bool node_matches(const Node* n, std::span<const Slot> v, bool root);
  const Node* find(StateID id, bool root) const;

  std::uint64_t mask_;
  std::uint64_t capacity_;
  std::unique_ptr<std::atomic<Node*>[]> buckets_;
  std::unique_ptr<std::atomic<Node*>[]> id_table_;
  std::atomic<std::uint64_t> next_index_{0};
  std::atomic<std::uint64_t> root_count_{0};
  std::atomic<std::uint64_t> data_count_{0};
  std::atomic<std::uint64_t> slot_count_{0};
};

}  // namespace vlstore
