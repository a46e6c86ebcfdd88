#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "vlstore/cchm.hpp"
#include "vlstore/store.hpp"
#include "vlstore/treedbs_pad.hpp"

namespace vlstore {

struct HybridConfig {
  std::uint32_t length = 0;  // vectors of exactly this length go to the tree
  int scale_root = 20;       // tree root set
  int scale_data = 20;       // tree data set
  int scale_sub = 20;        // cchm side
};

/// Composite comparison store: vectors of exactly the configured length go
/// to a fixed-length compression tree, everything else to the uncompressed
/// chaining map. Since the tree side only ever holds that one length, the
/// length inside a StateID routes every later operation unambiguously. A
/// delta whose result length crosses the routing boundary is materialized
/// and reinserted on the other side.
class HybridStore final : public StateStore {
public:
  explicit HybridStore(HybridConfig cfg);

  InsertResult insert(std::span<const Slot> v, bool root) override;
  Vector get(StateID id, bool root) const override;
  Vector get_partial(StateID id, std::uint32_t offset, std::uint32_t length,
                     bool root) const override;
  InsertResult delta(StateID id, std::uint32_t offset, std::span<const Slot> d,
                     bool root) override;
  InsertResult delta_sparse(StateID id, const SparseDeltaList& deltas,
                            bool root) override;
  StoreStats stats() const override;
  std::string name() const override { return "treedbs_x_cchm"; }

private:
  StateStore& side(std::uint32_t length);
  const StateStore& side(std::uint32_t length) const;

  std::uint32_t length_;
  TreePadStore tree_;
  CchmStore flat_;
};

}  // namespace vlstore
