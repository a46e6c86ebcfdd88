#include "vlstore/hybrid.hpp"

namespace vlstore {

HybridStore::HybridStore(HybridConfig cfg)
    : length_(cfg.length),
      tree_(TreePadConfig{cfg.length, cfg.scale_root, cfg.scale_data}),
      flat_(CchmConfig{cfg.scale_sub}) {}

StateStore& HybridStore::side(std::uint32_t length) {
  return length == length_ ? static_cast<StateStore&>(tree_)
                           : static_cast<StateStore&>(flat_);
}

const StateStore& HybridStore::side(std::uint32_t length) const {
  return length == length_ ? static_cast<const StateStore&>(tree_)
                           : static_cast<const StateStore&>(flat_);
}

InsertResult HybridStore::insert(std::span<const Slot> v, bool root) {
  return side(static_cast<std::uint32_t>(v.size())).insert(v, root);
}

Vector HybridStore::get(StateID id, bool root) const {
  return side(id.length()).get(id, root);
}

Vector HybridStore::get_partial(StateID id, std::uint32_t offset,
                                std::uint32_t length, bool root) const {
  return side(id.length()).get_partial(id, offset, length, root);
}

InsertResult HybridStore::delta(StateID id, std::uint32_t offset,
                                std::span<const Slot> d, bool root) {
  SparseDeltaList one;
  one.push_back(SparseDelta{offset, Vector(d.begin(), d.end())});
  return delta_sparse(id, one, root);
}

InsertResult HybridStore::delta_sparse(StateID id,
                                       const SparseDeltaList& deltas,
                                       bool root) {
  validate_sparse_deltas(deltas);
  const std::uint32_t new_len = overlaid_length(id.length(), deltas);
  StateStore& from = side(id.length());
  if (&from == &side(new_len)) {
    return from.delta_sparse(id, deltas, root);
  }
  const Vector base = from.get(id, root);
  return insert(apply_sparse(base, deltas), root);
}

StoreStats HybridStore::stats() const {
  const StoreStats a = tree_.stats();
  const StoreStats b = flat_.stats();
  StoreStats s;
  s.root_occupancy = a.root_occupancy + b.root_occupancy;
  s.data_occupancy = a.data_occupancy + b.data_occupancy;
  s.node_count = a.node_count + b.node_count;
  s.memory_bytes = a.memory_bytes + b.memory_bytes;
  s.allocated_bytes = a.allocated_bytes + b.allocated_bytes;
  return s;
}

}  // namespace vlstore
