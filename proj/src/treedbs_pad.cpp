#include "vlstore/treedbs_pad.hpp"

#include <algorithm>
#include <vector>

namespace vlstore {

namespace {
constexpr std::uint64_t kReservedNode = ~0ull;
}  // namespace

TreePadStore::TreePadStore(TreePadConfig cfg)
    : length_(cfg.length),
      roots_(SetConfig{cfg.scale_root}),
      data_(SetConfig{cfg.scale_data}) {
  if (length_ == 0 || length_ > kMaxStateLength) {
    throw ConfigError("treedbs_pad: padded length outside [1, 2^24 - 1]");
  }
  if (cfg.scale_data > 32) {
    throw ConfigError("treedbs_pad: scale_data above 32 cannot be referenced "
                      "by 32-bit node halves");
  }
}

InsertResult TreePadStore::insert(std::span<const Slot> v, bool root) {
  if (v.empty()) {
    throw LengthError("treedbs_pad: empty vector");
  }
  if (v.size() > length_) {
    throw LengthError("treedbs_pad: vector longer than configured length");
  }
  const std::uint32_t L = length_;
  Vector padded(L, 0);
  std::copy(v.begin(), v.end(), padded.begin());

  std::uint64_t top;
  if (L == 1) {
    top = pack_node(padded[0], 0);
  } else {
    // index[n] = data-set reference of interior node n (positions 2..L-1).
    std::vector<std::uint32_t> index(L, 0);
    top = 0;
    for (std::uint32_t n = L - 1; n >= 1; --n) {
      auto ref = [&](std::uint32_t pos) {
        return pos >= L ? padded[pos - L] : index[pos];
      };
      const std::uint64_t value = pack_node(ref(2 * n), ref(2 * n + 1));
      if (value == kReservedNode) {
        // Children built so far stay behind as unreferenced entries.
        throw ReservedValueError(
            "treedbs_pad: vector builds the reserved all-ones node");
      }
      if (n == 1) {
        top = value;
      } else {
        index[n] =
            static_cast<std::uint32_t>(data_.insert_if_absent(value).index);
      }
    }
  }

  IndexedHashSet& set = root ? roots_ : data_;
  const std::uint32_t true_len = static_cast<std::uint32_t>(v.size());
  const IndexedHashSet::InsertOutcome out =
      set.insert_if_absent(top, root ? true_len : 0);
  return {StateID(out.index, true_len), out.is_new};
}

Vector TreePadStore::reconstruct(StateID id, bool root) const {
  const std::uint32_t n = id.length();
  if (n == 0 || n > length_) {
    throw UnknownIdError("treedbs_pad: id length incompatible with store");
  }
  std::uint64_t top;
  if (root) {
    const IndexedHashSet::Entry e = roots_.read(id.index());
    if (e.tag != n) {
      throw UnknownIdError("treedbs_pad: root entry length does not match id");
    }
    top = e.value;
  } else {
    top = data_.read(id.index()).value;
  }

  const std::uint32_t L = length_;
  Vector padded(L, 0);
  if (L == 1) {
    padded[0] = node_first(top);
  } else {
    // Walk down from node 1, materializing interior nodes as reached.
    auto expand = [&](auto&& self, std::uint32_t pos,
                      std::uint64_t value) -> void {
      const std::uint32_t kids[2] = {2 * pos, 2 * pos + 1};
      const std::uint32_t refs[2] = {node_first(value), node_second(value)};
      for (int k = 0; k < 2; ++k) {
        if (kids[k] >= L) {
          padded[kids[k] - L] = refs[k];
        } else {
          self(self, kids[k], data_.read(refs[k]).value);
        }
      }
    };
    expand(expand, 1, top);
  }
  padded.resize(n);
  return padded;
}

Vector TreePadStore::get(StateID id, bool root) const {
  return reconstruct(id, root);
}

Vector TreePadStore::get_partial(StateID id, std::uint32_t offset,
                                 std::uint32_t length, bool root) const {
  const Vector v = reconstruct(id, root);
  if (length == 0 || offset > v.size() || v.size() - offset < length) {
    throw BoundsError("treedbs_pad: slice outside stored vector");
  }
  return Vector(v.begin() + offset, v.begin() + offset + length);
}

InsertResult TreePadStore::delta(StateID id, std::uint32_t offset,
                                 std::span<const Slot> d, bool root) {
  SparseDeltaList one;
  one.push_back(SparseDelta{offset, Vector(d.begin(), d.end())});
  return delta_sparse(id, one, root);
}

InsertResult TreePadStore::delta_sparse(StateID id,
                                        const SparseDeltaList& deltas,
                                        bool root) {
  validate_sparse_deltas(deltas);
  const Vector base = reconstruct(id, root);
  return insert(apply_sparse(base, deltas), root);
}

StoreStats TreePadStore::stats() const {
  const SetStats rs = roots_.stats();
  const SetStats ds = data_.stats();
  StoreStats s;
  s.root_occupancy = rs.occupancy;
  s.data_occupancy = ds.occupancy;
  s.node_count = rs.occupancy + ds.occupancy;
  s.memory_bytes = rs.memory_bytes + ds.memory_bytes;
  s.allocated_bytes = rs.allocated_bytes + ds.allocated_bytes;
  return s;
}

}  // namespace vlstore
