#include "vlstore/store.hpp"

#include <vector>

namespace vlstore {

Vector StateStore::get_recursive(StateID id, const OffsetPath& path,
                                 std::uint32_t length) const {
  if (path.empty()) {
    throw BoundsError("get_recursive: empty offset path");
  }
  StateID current = id;
  bool root = true;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    Vector pair = get_partial(current, path[i], 2, root);
    current = decode_state_id(pair[0], pair[1]);
    root = false;
  }
  return get_partial(current, path.back(), length, root);
}

InsertResult StateStore::delta_recursive_sparse(StateID id,
                                               const OffsetPath& path,
                                               const SparseDeltaList& deltas) {
  if (path.empty()) {
    return delta_sparse(id, deltas, true);
  }
  // Walk down the embedding chain, keeping every level's id so the rewritten
  // sub-state ids can be stitched back in on the way up.
  std::vector<StateID> chain;
  chain.reserve(path.size() + 1);
  chain.push_back(id);
  bool root = true;
  for (std::size_t i = 0; i < path.size(); ++i) {
    Vector pair = get_partial(chain.back(), path[i], 2, root);
    chain.push_back(decode_state_id(pair[0], pair[1]));
    root = false;
  }
  InsertResult res = delta_sparse(chain.back(), deltas, false);
  for (std::size_t i = path.size(); i-- > 0;) {
    SparseDeltaList up;
    up.push_back(SparseDelta{path[i], encode_state_id(res.id)});
    res = delta_sparse(chain[i], up, i == 0);
  }
  return res;
}

}  // namespace vlstore
