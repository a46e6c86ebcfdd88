#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "vlstore/core.hpp"

namespace vlstore {

/// The four tree layouts whose node economics differ on variable-length
/// vectors. All agree on how many nodes a single balanced vector needs;
/// they diverge on how much of an existing tree a one-slot extension reuses.
enum class SchemaKind {
  paper_treedbs,   // recursive ceil/floor halving, 1-slot segments embedded
  impl_treedbs,    // array layout, node n pairs positions 2n and 2n+1
  impl_backwards,  // array layout over the reversed vector
  dtree_chain,     // left child spans lpst(len); chain of balanced trees
};

constexpr std::array<SchemaKind, 4> kAllSchemaKinds = {
    SchemaKind::paper_treedbs, SchemaKind::impl_treedbs,
    SchemaKind::impl_backwards, SchemaKind::dtree_chain};

std::string schema_kind_name(SchemaKind kind);

struct SchemaInsertReport {
  std::uint64_t nodes_added = 0;
  std::uint64_t total_nodes = 0;
};

/// Pure single-threaded node counter: simulates inserts under one schema
/// with exact set semantics and reports how many distinct nodes each insert
/// creates. Nodes are deduplicated structurally (a leaf slot never aliases
/// an equal-valued node reference), which makes sharing deterministic and
/// content-based. Under dtree_chain the top node of each vector lives in a
/// separate root table keyed with the vector length, mirroring the real
/// store; the other schemas keep a single node table.
class SchemaAnalyzer {
public:
  explicit SchemaAnalyzer(SchemaKind kind) : kind_(kind) {}

  SchemaInsertReport insert(std::span<const Slot> v);

  std::uint64_t total_nodes() const {
    return interned_.size() + root_entries_.size();
  }
  SchemaKind kind() const { return kind_; }

private:
  struct Ref {
    bool leaf = false;
    std::uint32_t value = 0;  // slot value if leaf, else node id
  };
  using NodeKey = std::tuple<bool, std::uint32_t, bool, std::uint32_t>;

  static NodeKey key_of(Ref l, Ref r) {
    return {l.leaf, l.value, r.leaf, r.value};
  }

  std::uint32_t intern(Ref l, Ref r);
  Ref build_halving(std::span<const Slot> v, std::uint32_t lo,
                    std::uint32_t len);
  Ref build_chain(std::span<const Slot> v, std::uint32_t lo,
                  std::uint32_t len);
  Ref build_array(std::span<const Slot> slots);

  SchemaKind kind_;
  std::map<NodeKey, std::uint32_t> interned_;
  std::map<std::tuple<NodeKey, std::uint32_t>, std::uint32_t> root_entries_;
  std::uint64_t added_ = 0;  // scratch for the insert in progress
};

std::vector<SchemaInsertReport> analyze_schema(SchemaKind kind,
                                               const std::vector<Vector>& vs);

}  // namespace vlstore
