#include "vlstore/dtree.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace vlstore {
namespace {

/// An old subtree landing inside the segment currently being rebuilt:
/// [lo, lo + len) in the coordinates of the *new* vector. For len == 1 the
/// reference is the slot value itself, otherwise a data-set node index.
struct SourceSeg {
  std::uint32_t lo;
  std::uint32_t len;
  std::uint32_t ref;
};

/// Rebuilds the tree of an overlaid vector without materializing it.
///
/// Old subtrees travel down the recursion as SourceSegs. A segment whose
/// single source aligns exactly and which no delta touches reuses the old
/// node as-is — sound because a subtree's shape depends only on its width.
/// Sources straddling a split point are expanded one node at a time; slots
/// covered by neither source nor delta read as zero (growth gap fill).
struct OverlayBuilder {
  IndexedHashSet& data;
  const SparseDeltaList& deltas;

  bool deltas_intersect(std::uint32_t lo, std::uint32_t hi) const {
    auto it = std::partition_point(
        deltas.begin(), deltas.end(), [lo](const SparseDelta& d) {
          return d.offset + static_cast<std::uint32_t>(d.data.size()) <= lo;
        });
    return it != deltas.end() && it->offset < hi;
  }

  const Slot* delta_value(std::uint32_t pos) const {
    auto it = std::partition_point(
        deltas.begin(), deltas.end(), [pos](const SparseDelta& d) {
          return d.offset + static_cast<std::uint32_t>(d.data.size()) <= pos;
        });
    if (it != deltas.end() && it->offset <= pos) {
      return &it->data[pos - it->offset];
    }
    return nullptr;
  }

  void assign(SourceSeg s, std::uint32_t p, std::vector<SourceSeg>& left,
              std::vector<SourceSeg>& right) const {
    if (s.lo + s.len <= p) {
      left.push_back(s);
    } else if (s.lo >= p) {
      right.push_back(s);
    } else {
      // Straddles the split point; only len >= 2 can, so s.ref is a node.
      const std::uint64_t node = data.read(s.ref).value;
      const std::uint32_t half = lpst(s.len);
      assign({s.lo, half, node_first(node)}, p, left, right);
      assign({s.lo + half, s.len - half, node_second(node)}, p, left, right);
    }
  }

  std::uint32_t build(std::uint32_t lo, std::uint32_t len,
                      std::vector<SourceSeg> srcs) {
    if (srcs.size() == 1 && srcs[0].lo == lo && srcs[0].len == len &&
        !deltas_intersect(lo, lo + len)) {
      return srcs[0].ref;
    }
    if (len == 1) {
      if (const Slot* v = delta_value(lo)) {
        return *v;
      }
      for (const SourceSeg& s : srcs) {
        if (s.lo == lo) {
          return s.ref;
        }
      }
      return 0;
    }
    const std::uint32_t half = lpst(len);
    std::vector<SourceSeg> left;
    std::vector<SourceSeg> right;
    for (const SourceSeg& s : srcs) {
      assign(s, lo + half, left, right);
    }
    const std::uint32_t l = build(lo, half, std::move(left));
    const std::uint32_t r = build(lo + half, len - half, std::move(right));
    return static_cast<std::uint32_t>(
        data.insert_if_absent(pack_node(l, r)).index);
  }
};

}  // namespace

DTree::DTree(DTreeConfig cfg)
    : roots_(SetConfig{cfg.scale_root}), data_(SetConfig{cfg.scale_data}) {
  if (cfg.scale_data > 32) {
    throw ConfigError("dtree: scale_data above 32 cannot be referenced "
                      "by 32-bit node halves");
  }
}

InsertResult DTree::insert(std::span<const Slot> v, bool root) {
  const std::size_t n = v.size();
  if (n == 0 || n > kMaxStateLength) {
    throw LengthError("dtree: vector length outside [1, 2^24 - 1]");
  }
  std::uint64_t top;
  if (n == 1) {
    top = pack_node(v[0], 0);
  } else {
    const std::uint32_t len = static_cast<std::uint32_t>(n);
    const std::uint32_t half = lpst(len);
    top = pack_node(build_ref(v, 0, half), build_ref(v, half, len - half));
  }
  return publish_top(top, static_cast<std::uint32_t>(n), root);
}

std::uint32_t DTree::build_ref(std::span<const Slot> v, std::uint32_t lo,
                               std::uint32_t len) {
  if (len == 1) {
    return v[lo];
  }
  const std::uint32_t half = lpst(len);
  const std::uint64_t node =
      pack_node(build_ref(v, lo, half), build_ref(v, lo + half, len - half));
  return static_cast<std::uint32_t>(data_.insert_if_absent(node).index);
}

std::uint64_t DTree::read_top(StateID id, bool root) const {
  if (root) {
    const IndexedHashSet::Entry e = roots_.read(id.index());
    if (e.tag != id.length()) {
      throw UnknownIdError("dtree: root entry length does not match id");
    }
    return e.value;
  }
  return data_.read(id.index()).value;
}

InsertResult DTree::publish_top(std::uint64_t top, std::uint32_t length,
                                bool root) {
  IndexedHashSet& set = root ? roots_ : data_;
  const IndexedHashSet::InsertOutcome out =
      set.insert_if_absent(top, root ? length : 0);
  return {StateID(out.index, length), out.is_new};
}

Vector DTree::get(StateID id, bool root) const {
  return get_partial(id, 0, id.length(), root);
}

Vector DTree::get_partial(StateID id, std::uint32_t offset,
                          std::uint32_t length, bool root) const {
  const std::uint32_t n = id.length();
  if (n == 0) {
    throw UnknownIdError("dtree: id with zero length");
  }
  if (length == 0 || offset > n || n - offset < length) {
    throw BoundsError("dtree: slice outside stored vector");
  }
  const std::uint64_t top = read_top(id, root);
  Vector out(length);
  if (n == 1) {
    out[0] = node_first(top);
    return out;
  }
  const std::uint32_t half = lpst(n);
  gather(node_first(top), 0, half, offset, offset + length, out);
  gather(node_second(top), half, n - half, offset, offset + length, out);
  return out;
}

void DTree::gather(std::uint32_t ref, std::uint32_t lo, std::uint32_t len,
                   std::uint32_t a, std::uint32_t b, Vector& out) const {
  if (lo >= b || lo + len <= a) {
    return;
  }
  if (len == 1) {
    out[lo - a] = ref;
    return;
  }
  const std::uint64_t node = data_.read(ref).value;
  const std::uint32_t half = lpst(len);
  gather(node_first(node), lo, half, a, b, out);
  gather(node_second(node), lo + half, len - half, a, b, out);
}

InsertResult DTree::delta(StateID id, std::uint32_t offset,
                          std::span<const Slot> d, bool root) {
  SparseDeltaList one;
  one.push_back(SparseDelta{offset, Vector(d.begin(), d.end())});
  return delta_sparse(id, one, root);
}

InsertResult DTree::delta_sparse(StateID id, const SparseDeltaList& deltas,
                                 bool root) {
  const std::uint32_t m = id.length();
  if (m == 0) {
    throw UnknownIdError("dtree: id with zero length");
  }
  validate_sparse_deltas(deltas);
  const std::uint64_t top = read_top(id, root);
  const std::uint32_t new_n = overlaid_length(m, deltas);

  OverlayBuilder builder{data_, deltas};
  std::vector<SourceSeg> sources;
  if (m == 1) {
    sources.push_back({0, 1, node_first(top)});
  } else {
    const std::uint32_t half = lpst(m);
    sources.push_back({0, half, node_first(top)});
    sources.push_back({half, m - half, node_second(top)});
  }

  std::uint64_t new_top;
  if (new_n == 1) {
    new_top = pack_node(builder.build(0, 1, std::move(sources)), 0);
  } else {
    const std::uint32_t half = lpst(new_n);
    std::vector<SourceSeg> left;
    std::vector<SourceSeg> right;
    for (const SourceSeg& s : sources) {
      builder.assign(s, half, left, right);
    }
    const std::uint32_t l = builder.build(0, half, std::move(left));
    const std::uint32_t r = builder.build(half, new_n - half, std::move(right));
    new_top = pack_node(l, r);
  }
  return publish_top(new_top, new_n, root);
}

StoreStats DTree::stats() const {
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
