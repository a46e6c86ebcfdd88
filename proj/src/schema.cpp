#include "vlstore/schema.hpp"

#include <algorithm>

namespace vlstore {

std::string schema_kind_name(SchemaKind kind) {
  switch (kind) {
    case SchemaKind::paper_treedbs: return "paper_treedbs";
    case SchemaKind::impl_treedbs: return "impl_treedbs";
    case SchemaKind::impl_backwards: return "impl_backwards";
    case SchemaKind::dtree_chain: return "dtree_chain";
  }
  return "unknown";
}

std::uint32_t SchemaAnalyzer::intern(Ref l, Ref r) {
  const NodeKey key = key_of(l, r);
  auto [it, fresh] =
      interned_.try_emplace(key, static_cast<std::uint32_t>(interned_.size()));
  if (fresh) {
    ++added_;
  }
  return it->second;
}

SchemaAnalyzer::Ref SchemaAnalyzer::build_halving(std::span<const Slot> v,
                                                  std::uint32_t lo,
                                                  std::uint32_t len) {
  if (len == 1) {
    return {true, v[lo]};
  }
  const std::uint32_t left = (len + 1) / 2;  // ceil
  const Ref l = build_halving(v, lo, left);
  const Ref r = build_halving(v, lo + left, len - left);
  return {false, intern(l, r)};
}

SchemaAnalyzer::Ref SchemaAnalyzer::build_chain(std::span<const Slot> v,
                                                std::uint32_t lo,
                                                std::uint32_t len) {
  if (len == 1) {
    return {true, v[lo]};
  }
  const std::uint32_t left = lpst(len);
  const Ref l = build_chain(v, lo, left);
  const Ref r = build_chain(v, lo + left, len - left);
  return {false, intern(l, r)};
}

SchemaAnalyzer::Ref SchemaAnalyzer::build_array(std::span<const Slot> slots) {
  const std::uint32_t L = static_cast<std::uint32_t>(slots.size());
  if (L == 1) {
    return {true, slots[0]};
  }
  std::vector<std::uint32_t> index(L, 0);
  auto ref = [&](std::uint32_t pos) -> Ref {
    if (pos >= L) {
      return {true, slots[pos - L]};
    }
    return {false, index[pos]};
  };
  for (std::uint32_t n = L - 1; n >= 1; --n) {
    index[n] = intern(ref(2 * n), ref(2 * n + 1));
  }
  return {false, index[1]};
}

SchemaInsertReport SchemaAnalyzer::insert(std::span<const Slot> v) {
  if (v.empty()) {
    return {0, total_nodes()};
  }
  added_ = 0;
  const std::uint32_t len = static_cast<std::uint32_t>(v.size());
  switch (kind_) {
    case SchemaKind::paper_treedbs:
      build_halving(v, 0, len);
      break;
    case SchemaKind::impl_treedbs:
      build_array(v);
      break;
    case SchemaKind::impl_backwards: {
      Vector rev(v.rbegin(), v.rend());
      build_array(rev);
      break;
    }
    case SchemaKind::dtree_chain: {
      // Top node goes to a root table keyed with the full length, like the
      // real store; a one-slot vector tops out as (slot, 0).
      Ref l{true, v[0]};
      Ref r{true, 0};
      if (len >= 2) {
        const std::uint32_t left = lpst(len);
        l = build_chain(v, 0, left);
        r = build_chain(v, left, len - left);
      }
      auto [it, fresh] = root_entries_.try_emplace(
          std::tuple{key_of(l, r), len},
          static_cast<std::uint32_t>(root_entries_.size()));
      (void)it;
      if (fresh) {
        ++added_;
      }
      break;
    }
  }
  return {added_, total_nodes()};
}

std::vector<SchemaInsertReport> analyze_schema(SchemaKind kind,
                                               const std::vector<Vector>& vs) {
  SchemaAnalyzer analyzer(kind);
  std::vector<SchemaInsertReport> out;
  out.reserve(vs.size());
  for (const Vector& v : vs) {
    out.push_back(analyzer.insert(v));
  }
  return out;
}

}  // namespace vlstore
