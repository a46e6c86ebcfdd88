#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>
#include <vector>

#include "vlstore/indexed_hash_set.hpp"

using namespace vlstore;

TEST_CASE("scale bounds are enforced") {
  CHECK_THROWS_AS(IndexedHashSet(SetConfig{3}), ConfigError);
  CHECK_THROWS_AS(IndexedHashSet(SetConfig{41}), ConfigError);
  const IndexedHashSet set(SetConfig{4});
  CHECK(set.capacity() == 16);
  CHECK(set.occupancy() == 0);
}

TEST_CASE("insert assigns a stable index per distinct (value, tag)") {
  IndexedHashSet set(SetConfig{8});
  const auto a = set.insert_if_absent(42, 7);
  CHECK(a.is_new);
  const auto b = set.insert_if_absent(42, 7);
  CHECK_FALSE(b.is_new);
  CHECK(a.index == b.index);

  const auto other_tag = set.insert_if_absent(42, 8);
  CHECK(other_tag.is_new);
  CHECK(other_tag.index != a.index);

  const auto e = set.read(a.index);
  CHECK(e.value == 42);
  CHECK(e.tag == 7);
  CHECK(set.occupancy() == 2);
}

TEST_CASE("every 64-bit value is storable, including all-ones and zero") {
  IndexedHashSet set(SetConfig{6});
  const auto ones = set.insert_if_absent(~0ull, 0);
  const auto zero = set.insert_if_absent(0ull, 0);
  CHECK(ones.is_new);
  CHECK(zero.is_new);
  CHECK(set.read(ones.index).value == ~0ull);
  CHECK(set.read(zero.index).value == 0ull);
}

TEST_CASE("reading an unknown index fails") {
  IndexedHashSet set(SetConfig{6});
  CHECK_THROWS_AS(set.read(0), UnknownIdError);
  const auto r = set.insert_if_absent(5, 0);
  CHECK_NOTHROW(set.read(r.index));
  CHECK_THROWS_AS(set.read(r.index + 1 <= 63 ? r.index + 1 : 0),
                  UnknownIdError);
  CHECK_THROWS_AS(set.read(1000), UnknownIdError);
}

TEST_CASE("a full set still answers duplicates but rejects new values") {
  IndexedHashSet set(SetConfig{4});
  for (std::uint64_t v = 0; v < 16; ++v) {
    CHECK(set.insert_if_absent(v * 1000 + 1, 0).is_new);
  }
  CHECK(set.occupancy() == 16);
  // Existing values keep resolving even at full occupancy.
  CHECK_FALSE(set.insert_if_absent(5 * 1000 + 1, 0).is_new);
  CHECK_THROWS_AS(set.insert_if_absent(999999, 0), CapacityError);
}

TEST_CASE("stats follow the documented 12-byte entry footprint") {
  IndexedHashSet set(SetConfig{10});
  for (std::uint64_t v = 0; v < 100; ++v) {
    set.insert_if_absent(v, 3);
  }
  const SetStats s = set.stats();
  CHECK(s.occupancy == 100);
  CHECK(s.capacity == 1024);
  CHECK(s.memory_bytes == 100 * IndexedHashSet::kEntryBytes);
  CHECK(s.allocated_bytes == 1024 * IndexedHashSet::kEntryBytes);
}

TEST_CASE("occupancy is insertion-order independent") {
  std::mt19937_64 rng(7);
  std::vector<std::uint64_t> values(500);
  for (auto& v : values) {
    v = rng();
  }
  // Duplicates on purpose.
  for (std::size_t i = 0; i < 100; ++i) {
    values.push_back(values[i]);
  }

  IndexedHashSet forward(SetConfig{12});
  for (auto v : values) {
    forward.insert_if_absent(v, 0);
  }
  IndexedHashSet backward(SetConfig{12});
  for (auto it = values.rbegin(); it != values.rend(); ++it) {
    backward.insert_if_absent(*it, 0);
  }
  CHECK(forward.occupancy() == backward.occupancy());
  CHECK(forward.occupancy() == 500);
}

TEST_CASE("concurrent inserts elect exactly one winner per distinct value") {
  const int kThreads = 8;
  const std::size_t kDistinct = 2000;
  std::mt19937_64 rng(99);
  std::vector<std::uint64_t> pool(kDistinct);
  for (auto& v : pool) {
    v = rng();
  }

  IndexedHashSet set(SetConfig{12});
  std::vector<std::vector<int>> wins(kThreads,
                                     std::vector<int>(kDistinct, 0));
  {
    std::vector<std::jthread> workers;
    for (int t = 0; t < kThreads; ++t) {
      workers.emplace_back([&, t] {
        std::vector<std::size_t> order(kDistinct);
        for (std::size_t i = 0; i < kDistinct; ++i) {
          order[i] = i;
        }
        std::shuffle(order.begin(), order.end(), std::mt19937_64(t));
        for (std::size_t i : order) {
          if (set.insert_if_absent(pool[i], 0).is_new) {
            wins[t][i] = 1;
          }
        }
      });
    }
  }

  CHECK(set.occupancy() == kDistinct);
  for (std::size_t i = 0; i < kDistinct; ++i) {
    int total = 0;
    for (int t = 0; t < kThreads; ++t) {
      total += wins[t][i];
    }
    CHECK(total == 1);
  }
  // All threads agree on the index afterwards.
  const auto again = set.insert_if_absent(pool[0], 0);
  CHECK_FALSE(again.is_new);
  CHECK(set.read(again.index).value == pool[0]);
}
