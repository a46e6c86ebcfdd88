#include <doctest.h>

#include "vlstore/core.hpp"

using namespace vlstore;

TEST_CASE("StateID splits 40-bit index and 24-bit length") {
  const StateID id(0x12345678ABull, 0x00ABCDEF);
  CHECK(id.index() == 0x12345678ABull);
  CHECK(id.length() == 0x00ABCDEFu);
  CHECK(StateID::from_raw(id.raw()) == id);

  CHECK(StateID(0, 1) != StateID(0, 2));
  CHECK(StateID(1, 1) != StateID(0, 1));
  CHECK(StateID(5, 7) == StateID(5, 7));
}

TEST_CASE("embedded StateIDs round-trip through two slots") {
  const StateID id((1ull << 39) | 12345, 999);
  Slot lo = 0;
  Slot hi = 0;
  encode_state_id(id, lo, hi);
  CHECK(decode_state_id(lo, hi) == id);

  const Vector enc = encode_state_id(id);
  REQUIRE(enc.size() == 2);
  CHECK(decode_state_id(enc[0], enc[1]) == id);
}

TEST_CASE("lpst is the largest power of two strictly below x") {
  CHECK(lpst(2) == 1);
  CHECK(lpst(3) == 2);
  CHECK(lpst(4) == 2);
  CHECK(lpst(5) == 4);
  CHECK(lpst(6) == 4);
  CHECK(lpst(8) == 4);
  CHECK(lpst(9) == 8);
  CHECK(lpst(10) == 8);
  CHECK(lpst(11) == 8);
  CHECK(lpst(16) == 8);
  CHECK(lpst(17) == 16);
  CHECK(lpst(1u << 20) == 1u << 19);
  CHECK(lpst((1u << 20) + 1) == 1u << 20);
}

TEST_CASE("node packing keeps the first half in the high bits") {
  const std::uint64_t node = pack_node(0xAABBCCDD, 0x11223344);
  CHECK(node == 0xAABBCCDD11223344ull);
  CHECK(node_first(node) == 0xAABBCCDDu);
  CHECK(node_second(node) == 0x11223344u);
}

TEST_CASE("sparse delta lists are validated") {
  SUBCASE("sorted non-overlapping lists pass") {
    SparseDeltaList ok;
    ok.push_back({0, {1, 2}});
    ok.push_back({2, {3}});
    ok.push_back({7, {4, 5, 6}});
    CHECK_NOTHROW(validate_sparse_deltas(ok));
    CHECK(overlaid_length(4, ok) == 10);
    CHECK(overlaid_length(32, ok) == 32);
  }
  SUBCASE("empty list is a no-op overlay") {
    CHECK_NOTHROW(validate_sparse_deltas({}));
    CHECK(overlaid_length(5, {}) == 5);
  }
  SUBCASE("unsorted entries are rejected") {
    SparseDeltaList bad;
    bad.push_back({5, {1}});
    bad.push_back({2, {1}});
    CHECK_THROWS_AS(validate_sparse_deltas(bad), DeltaListError);
  }
  SUBCASE("overlapping entries are rejected") {
    SparseDeltaList bad;
    bad.push_back({0, {1, 2, 3}});
    bad.push_back({2, {9}});
    CHECK_THROWS_AS(validate_sparse_deltas(bad), DeltaListError);
  }
  SUBCASE("empty entry data is rejected") {
    SparseDeltaList bad;
    bad.push_back({3, {}});
    CHECK_THROWS_AS(validate_sparse_deltas(bad), LengthError);
  }
  SUBCASE("extending past the maximum length is rejected") {
    SparseDeltaList bad;
    bad.push_back({kMaxStateLength, {1}});
    CHECK_THROWS_AS(validate_sparse_deltas(bad), LengthError);
  }
}

TEST_CASE("apply_sparse overlays with zero-filled gaps") {
  const Vector base{1, 2, 3, 4, 5, 6};

  SparseDeltaList mid;
  mid.push_back({2, {7, 8}});
  CHECK(apply_sparse(base, mid) == Vector{1, 2, 7, 8, 5, 6});

  SparseDeltaList edge;
  edge.push_back({5, {7, 8}});
  CHECK(apply_sparse(base, edge) == Vector{1, 2, 3, 4, 5, 7, 8});

  SparseDeltaList grow;
  grow.push_back({8, {7, 8}});
  CHECK(apply_sparse(base, grow) == Vector{1, 2, 3, 4, 5, 6, 0, 0, 7, 8});

  SparseDeltaList multi;
  multi.push_back({0, {9}});
  multi.push_back({7, {10, 11}});
  CHECK(apply_sparse(base, multi) == Vector{9, 2, 3, 4, 5, 6, 0, 10, 11});
}
