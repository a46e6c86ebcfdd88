#include "vlstore/cchm.hpp"

#include <algorithm>
#include <new>

#include "vlstore/indexed_hash_set.hpp"

namespace vlstore {

struct CchmStore::Node {
  Node* next = nullptr;
  std::uint64_t index = 0;
  std::uint32_t length = 0;
  bool root = false;
  Vector slots;
};

namespace {

std::uint64_t vec_hash(std::span<const Slot> v, bool root) {
  std::uint64_t h = mix_hash(
      static_cast<std::uint64_t>(v.size()) | (root ? (1ull << 40) : 0), 0);
  for (Slot s : v) {
    h = mix_hash(h ^ s, 1);
  }
  return h;
}

}  // namespace

bool CchmStore::node_matches(const Node* n, std::span<const Slot> v,
                             bool root) {
  return n->root == root && n->length == v.size() &&
         std::equal(v.begin(), v.end(), n->slots.begin());
}

CchmStore::CchmStore(CchmConfig cfg) {
  if (cfg.scale < kMinSetScale || cfg.scale > kMaxSetScale) {
    throw ConfigError("cchm: scale outside [4, 40]");
  }
  capacity_ = 1ull << cfg.scale;
  mask_ = capacity_ - 1;
  try {
    buckets_ = std::make_unique<std::atomic<Node*>[]>(capacity_);
    id_table_ = std::make_unique<std::atomic<Node*>[]>(capacity_);
  } catch (const std::bad_alloc&) {
    throw ConfigError("cchm: cannot preallocate tables at this scale");
  }
  for (std::uint64_t i = 0; i < capacity_; ++i) {
    buckets_[i].store(nullptr, std::memory_order_relaxed);
    id_table_[i].store(nullptr, std::memory_order_relaxed);
  }
}

CchmStore::~CchmStore() {
  for (std::uint64_t i = 0; i < capacity_; ++i) {
    Node* n = buckets_[i].load(std::memory_order_relaxed);
    while (n != nullptr) {
      Node* next = n->next;
      delete n;
      n = next;
    }
  }
}

InsertResult CchmStore::insert(std::span<const Slot> v, bool root) {
  if (v.empty() || v.size() > kMaxStateLength) {
    throw LengthError("cchm: vector length outside [1, 2^24 - 1]");
  }
  const std::uint64_t bucket = vec_hash(v, root) & mask_;
  Node* head = buckets_[bucket].load(std::memory_order_acquire);
  for (Node* n = head; n != nullptr; n = n->next) {
    if (node_matches(n, v, root)) {
      return {StateID(n->index, n->length), false};
    }
  }

  const std::uint64_t index = next_index_.fetch_add(1, std::memory_order_relaxed);
  if (index >= capacity_) {
    throw CapacityError("cchm: id table exhausted");
  }
  Node* node = new Node;
  node->index = index;
  node->length = static_cast<std::uint32_t>(v.size());
  node->root = root;
  node->slots.assign(v.begin(), v.end());
  // Resolvable-by-id before chain-visible: a racing inserter that finds this
  // node in the chain may hand its id out immediately.
  id_table_[index].store(node, std::memory_order_release);

  while (true) {
    node->next = head;
    if (buckets_[bucket].compare_exchange_strong(head, node,
                                                 std::memory_order_acq_rel,
                                                 std::memory_order_acquire)) {
      (root ? root_count_ : data_count_).fetch_add(1, std::memory_order_relaxed);
      slot_count_.fetch_add(v.size(), std::memory_order_relaxed);
      return {StateID(index, node->length), true};
    }
    for (Node* n = head; n != nullptr; n = n->next) {
      if (node_matches(n, v, root)) {
        // Lost the race to an equal vector: roll back. The claimed index
        // stays burnt (resolving it now reports unknown).
        id_table_[index].store(nullptr, std::memory_order_relaxed);
        delete node;
        return {StateID(n->index, n->length), false};
      }
    }
  }
}

const CchmStore::Node* CchmStore::find(StateID id, bool root) const {
  if (id.index() >= capacity_) {
    throw UnknownIdError("cchm: id out of range");
  }
  const Node* n = id_table_[id.index()].load(std::memory_order_acquire);
  if (n == nullptr || n->root != root || n->length != id.length()) {
    throw UnknownIdError("cchm: no state stored under this id");
  }
  return n;
}

Vector CchmStore::get(StateID id, bool root) const {
  return find(id, root)->slots;
}

Vector CchmStore::get_partial(StateID id, std::uint32_t offset,
                              std::uint32_t length, bool root) const {
  const Node* n = find(id, root);
  if (length == 0 || offset > n->length || n->length - offset < length) {
    throw BoundsError("cchm: slice outside stored vector");
  }
  return Vector(n->slots.begin() + offset, n->slots.begin() + offset + length);
}

InsertResult CchmStore::delta(StateID id, std::uint32_t offset,
                              std::span<const Slot> d, bool root) {
  SparseDeltaList one;
  one.push_back(SparseDelta{offset, Vector(d.begin(), d.end())});
  return delta_sparse(id, one, root);
}

InsertResult CchmStore::delta_sparse(StateID id, const SparseDeltaList& deltas,
                                     bool root) {
  validate_sparse_deltas(deltas);
  const Vector base = get(id, root);
  return insert(apply_sparse(base, deltas), root);
}

StoreStats CchmStore::stats() const {
  StoreStats s;
  s.root_occupancy = root_count_.load(std::memory_order_relaxed);
  s.data_occupancy = data_count_.load(std::memory_order_relaxed);
  s.node_count = s.root_occupancy + s.data_occupancy;
  s.memory_bytes = s.node_count * kNodeOverheadBytes +
                   4 * slot_count_.load(std::memory_order_relaxed);
  s.allocated_bytes = s.memory_bytes + 16 * capacity_;
  return s;
}

}  // namespace vlstore
