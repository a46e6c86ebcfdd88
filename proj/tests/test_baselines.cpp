#include <doctest.h>

#include <algorithm>
#include <random>
#include <thread>
#include <vector>

#include "reference_store.hpp"
#include "vlstore/cchm.hpp"
#include "vlstore/hybrid.hpp"
#include "vlstore/indexed_hash_set.hpp"
#include "vlstore/treedbs_pad.hpp"

using namespace vlstore;
using vlstore::testing::run_differential;

TEST_CASE("cchm: round-trips and exact newness for both flags") {
  CchmStore store;
  const Vector v{5, 6, 7};

  const InsertResult sub = store.insert(v, false);
  CHECK(sub.is_new);
  CHECK_FALSE(store.insert(v, false).is_new);
  CHECK(store.get(sub.id, false) == v);

  // The same vector as a root is a separate entry with exact newness.
  const InsertResult root = store.insert(v, true);
  CHECK(root.is_new);
  CHECK_FALSE(store.insert(v, true).is_new);
  CHECK(store.get(root.id, true) == v);

  // Ids are bound to the flag they were created under.
  CHECK_THROWS_AS(store.get(sub.id, true), UnknownIdError);
  CHECK_THROWS_AS(store.get(root.id, false), UnknownIdError);

  const Vector one{42};
  const InsertResult single = store.insert(one, true);
  CHECK(store.get(single.id, true) == one);
  CHECK(single.id.length() == 1);
}

TEST_CASE("cchm: deltas land on the same entry as direct inserts") {
  CchmStore store;
  const StateID base = store.insert(Vector{1, 2, 3, 4, 5, 6}, true).id;
  const InsertResult d = store.delta(base, 2, Vector{7, 8}, true);
  CHECK(d.is_new);
  CHECK(store.get(d.id, true) == Vector{1, 2, 7, 8, 5, 6});

  const InsertResult again = store.insert(Vector{1, 2, 7, 8, 5, 6}, true);
  CHECK_FALSE(again.is_new);
  CHECK(again.id == d.id);

  const InsertResult grown = store.delta(base, 8, Vector{9}, true);
  CHECK(store.get(grown.id, true) == Vector{1, 2, 3, 4, 5, 6, 0, 0, 9});
}

TEST_CASE("cchm: memory accounting follows the node/slot formula") {
  const int kScale = 8;
  CchmStore store(CchmConfig{kScale});
  CHECK(store.stats().node_count == 0);
  CHECK(store.stats().memory_bytes == 0);

  store.insert(Vector{1, 2}, true);          // 2 slots
  store.insert(Vector{1, 2, 3, 4, 5}, true); // 5 slots
  store.insert(Vector{9}, false);            // 1 slot

  const StoreStats s = store.stats();
  CHECK(s.root_occupancy == 2);
  CHECK(s.data_occupancy == 1);
  CHECK(s.node_count == 3);
  CHECK(s.memory_bytes == 3 * CchmStore::kNodeOverheadBytes + 4 * 8);
  CHECK(s.allocated_bytes == s.memory_bytes + 16 * (1ull << kScale));
}

TEST_CASE("cchm: capacity is enforced but lookups keep working") {
  CchmStore store(CchmConfig{4});  // 16 entries
  std::vector<StateID> ids;
  for (Slot i = 0; i < 16; ++i) {
    ids.push_back(store.insert(Vector{i, i + 100}, true).id);
  }
  CHECK_THROWS_AS(store.insert(Vector{999}, true), CapacityError);
  // Existing entries stay reachable and duplicate inserts still resolve.
  CHECK_FALSE(store.insert(Vector{3, 103}, true).is_new);
  CHECK(store.get(ids[3], true) == Vector{3, 103});
}

TEST_CASE("cchm: differential run with exact newness") {
  CchmStore store(CchmConfig{16});
  const auto result = run_differential(store, 3000, 999,
                                       /*strict_nonroot_newness=*/true);
  INFO(result.first_failure);
  CHECK(result.failures == 0);
}

TEST_CASE("cchm: concurrent inserts elect one winner per vector") {
  const int kThreads = 8;
  std::vector<Vector> pool(600);
  std::mt19937_64 rng(7);
  for (std::size_t i = 0; i < pool.size(); ++i) {
    pool[i].resize(std::uniform_int_distribution<std::uint32_t>(1, 12)(rng));
    for (Slot& s : pool[i]) {
      s = static_cast<Slot>(rng());
    }
    pool[i][0] = static_cast<Slot>(i);
  }
  CchmStore store(CchmConfig{12});
  std::vector<int> wins(kThreads, 0);
  {
    std::vector<std::jthread> workers;
    for (int t = 0; t < kThreads; ++t) {
      workers.emplace_back([&, t] {
        std::mt19937_64 order_rng(t * 31 + 1);
        std::vector<std::size_t> order(pool.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
          order[i] = i;
        }
        std::shuffle(order.begin(), order.end(), order_rng);
        int mine = 0;
        for (std::size_t i : order) {
          if (store.insert(pool[i], true).is_new) {
            ++mine;
          }
        }
        wins[t] = mine;
      });
    }
  }
  int total = 0;
  for (int w : wins) {
    total += w;
  }
  CHECK(total == static_cast<int>(pool.size()));
  CHECK(store.stats().root_occupancy == pool.size());
  // Every vector is still retrievable with its original content.
  for (const Vector& v : pool) {
    const InsertResult r = store.insert(v, true);
    CHECK_FALSE(r.is_new);
    CHECK(store.get(r.id, true) == v);
  }
}

TEST_CASE("treedbs_pad: shorter vectors round-trip without padding leaks") {
  TreePadStore store(TreePadConfig{8});
  const Vector v{1, 2, 3, 4, 5, 6};
  const InsertResult r = store.insert(v, true);
  CHECK(r.id.length() == 6);
  CHECK(store.get(r.id, true) == v);
  CHECK(store.get_partial(r.id, 4, 2, true) == Vector{5, 6});
  CHECK_THROWS_AS(store.get_partial(r.id, 5, 2, true), BoundsError);
}

TEST_CASE("treedbs_pad: same padded image, different lengths stay distinct") {
  TreePadStore store(TreePadConfig{4});
  const InsertResult a = store.insert(Vector{1, 2, 3}, true);
  const InsertResult b = store.insert(Vector{1, 2, 3, 0}, true);
  CHECK(a.is_new);
  CHECK(b.is_new);
  CHECK(a.id != b.id);
  CHECK(store.get(a.id, true) == Vector{1, 2, 3});
  CHECK(store.get(b.id, true) == Vector{1, 2, 3, 0});
  // Both share every tree node; only the root entries differ.
  const StoreStats s = store.stats();
  CHECK(s.root_occupancy == 2);
  CHECK(s.data_occupancy == 2);
}

TEST_CASE("treedbs_pad: vectors beyond the fixed length are rejected") {
  TreePadStore store(TreePadConfig{4});
  CHECK_THROWS_AS(store.insert(Vector{1, 2, 3, 4, 5}, true), LengthError);
  const StateID base = store.insert(Vector{1, 2, 3}, true).id;
  // Growing within the fixed length is fine...
  CHECK(store.get(store.delta(base, 3, Vector{4}, true).id, true) ==
        Vector{1, 2, 3, 4});
  // ...growing past it is not.
  CHECK_THROWS_AS(store.delta(base, 3, Vector{4, 5}, true), LengthError);
}

TEST_CASE("treedbs_pad: the all-ones node value is reserved") {
  TreePadStore store(TreePadConfig{4});
  const Slot kAllOnes = 0xFFFFFFFFu;
  CHECK_THROWS_AS(store.insert(Vector{kAllOnes, kAllOnes, 1, 2}, true),
                  ReservedValueError);
  // All-ones slots that never pair up together are ordinary data.
  const Vector ok{kAllOnes, 1, kAllOnes, 2};
  CHECK(store.get(store.insert(ok, true).id, true) == ok);

  TreePadStore two(TreePadConfig{2});
  CHECK_THROWS_AS(two.insert(Vector{kAllOnes, kAllOnes}, true),
                  ReservedValueError);
}

TEST_CASE("treedbs_pad: id lookups check both index and length") {
  TreePadStore store(TreePadConfig{4});
  CHECK_THROWS_AS(store.get(StateID(0, 3), true), UnknownIdError);
  const StateID id = store.insert(Vector{1, 2, 3}, true).id;
  CHECK_THROWS_AS(store.get(StateID(id.index(), 4), true), UnknownIdError);
}

TEST_CASE("treedbs_pad: differential run at the fixed length") {
  TreePadStore store(TreePadConfig{32, 16, 16});
  const auto result = run_differential(store, 2000, 4242,
                                       /*strict_nonroot_newness=*/false,
                                       /*max_len=*/32);
  INFO(result.first_failure);
  CHECK(result.failures == 0);
}

TEST_CASE("hybrid: exact-length vectors take the tree, the rest the map") {
  HybridStore store(HybridConfig{4});
  const Slot kAllOnes = 0xFFFFFFFFu;
  // The reserved-value restriction only applies on the tree side, so it
  // reveals the routing.
  CHECK_THROWS_AS(store.insert(Vector{kAllOnes, kAllOnes, 1, 2}, true),
                  ReservedValueError);
  const Vector short_ok{kAllOnes, kAllOnes, 1};
  CHECK(store.get(store.insert(short_ok, true).id, true) == short_ok);
}

TEST_CASE("hybrid: deltas may cross between the two sides") {
  HybridStore store(HybridConfig{4});
  const StateID tree_base = store.insert(Vector{1, 2, 3, 4}, true).id;

  // Same side: still the fixed length.
  const InsertResult same = store.delta(tree_base, 2, Vector{9, 9}, true);
  CHECK(store.get(same.id, true) == Vector{1, 2, 9, 9});

  // Tree -> map: the overlay grows past the fixed length.
  const InsertResult grown = store.delta(tree_base, 4, Vector{5, 6}, true);
  CHECK(grown.id.length() == 6);
  CHECK(store.get(grown.id, true) == Vector{1, 2, 3, 4, 5, 6});
  CHECK(store.insert(Vector{1, 2, 3, 4, 5, 6}, true).id == grown.id);

  // Map -> tree: a short vector fills up to the fixed length.
  const StateID flat_base = store.insert(Vector{7, 8, 9}, true).id;
  const InsertResult filled = store.delta(flat_base, 3, Vector{10}, true);
  CHECK(store.get(filled.id, true) == Vector{7, 8, 9, 10});
  const InsertResult direct = store.insert(Vector{7, 8, 9, 10}, true);
  CHECK_FALSE(direct.is_new);
  CHECK(direct.id == filled.id);
}

TEST_CASE("hybrid: stats aggregate both sides") {
  const int kScale = 6;
  HybridStore store(HybridConfig{4, kScale, kScale, kScale});
  store.insert(Vector{1, 2, 3, 4}, true);  // tree: 2 data nodes + 1 root
  store.insert(Vector{5, 6, 7}, true);     // map: 1 node, 3 slots
  const StoreStats s = store.stats();
  CHECK(s.root_occupancy == 2);
  CHECK(s.node_count == 4);
  const std::uint64_t tree_mem = 3 * IndexedHashSet::kEntryBytes;
  const std::uint64_t map_mem = CchmStore::kNodeOverheadBytes + 4 * 3;
  CHECK(s.memory_bytes == tree_mem + map_mem);
  const std::uint64_t tree_alloc =
      2 * (1ull << kScale) * IndexedHashSet::kEntryBytes;
  const std::uint64_t map_alloc = map_mem + 16 * (1ull << kScale);
  CHECK(s.allocated_bytes == tree_alloc + map_alloc);
}

TEST_CASE("hybrid: differential run across mixed lengths") {
  HybridStore store(HybridConfig{16, 16, 16, 16});
  const auto result = run_differential(store, 2000, 2024,
                                       /*strict_nonroot_newness=*/false,
                                       /*max_len=*/24);
  INFO(result.first_failure);
  CHECK(result.failures == 0);
}
