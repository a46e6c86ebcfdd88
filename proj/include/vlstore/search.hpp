#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>

#include "vlstore/store.hpp"

namespace vlstore {

class SearchContext;

/// A model exposes behavior only: it seeds the storage in initial_state and
/// emits the successors of one stored root state in next_states, both
/// exclusively through SearchContext operations. Implementations hold
/// configuration, never mutable state, so next_states may run concurrently
/// on distinct ids.
class Model {
public:
  virtual ~Model() = default;

  virtual std::string name() const = 0;
  virtual void initial_state(SearchContext& ctx) = 0;
  virtual void next_states(SearchContext& ctx, StateID s) = 0;

  /// Run-independent rendering of a stored root state, for comparing
  /// visited sets across runs. Models whose vectors embed StateIDs (which
  /// are only unique within one run) replace them with the sub-state
  /// contents; the default returns the vector as stored.
  virtual Vector dump_state(const StateStore& store, StateID id) const;
};

/// MPMC FIFO with built-in termination detection. `pending` counts queued
/// plus in-flight items: push raises it, task_done (after the item's
/// expansion finished) lowers it, so pending == 0 observed under the lock
/// means no queued work and no worker that could still produce any —
/// blocked pops then return nullopt. abort() drains immediately.
class WorkQueue {
public:
  void push(StateID id);
  std::optional<StateID> pop();
  void task_done();
  void abort();
  bool aborted() const;

private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<StateID> items_;
  std::uint64_t pending_ = 0;
  bool abort_ = false;
};

/// Wraps a storage for use by models: every operation delegates, and any
/// upload whose result is a *new root* state is pushed to the work queue
/// exactly once. Counts uploads per (length, root) for the length histogram
/// and root uploads for the transition count.
class SearchContext {
public:
  SearchContext(StateStore& store, WorkQueue& queue)
      : store_(store), queue_(queue) {}

  InsertResult insert(std::span<const Slot> v, bool root);
  InsertResult delta(StateID id, std::uint32_t offset, std::span<const Slot> d,
                     bool root);
  InsertResult delta_sparse(StateID id, const SparseDeltaList& deltas,
                            bool root);
  InsertResult delta_recursive_sparse(StateID id, const OffsetPath& path,
                                      const SparseDeltaList& deltas);

  Vector get(StateID id, bool root) const { return store_.get(id, root); }
  Vector get_partial(StateID id, std::uint32_t offset, std::uint32_t length,
                     bool root) const {
    return store_.get_partial(id, offset, length, root);
  }
  Vector get_recursive(StateID id, const OffsetPath& path,
                       std::uint32_t length) const {
    return store_.get_recursive(id, path, length);
  }

  StateStore& store() { return store_; }
  std::uint64_t discovered() const {
    return discovered_.load(std::memory_order_relaxed);
  }
  std::uint64_t root_uploads() const {
    return root_uploads_.load(std::memory_order_relaxed);
  }
  std::map<std::pair<std::uint32_t, bool>, std::uint64_t> histogram() const;

private:
  InsertResult uploaded(InsertResult r, bool root);

  StateStore& store_;
  WorkQueue& queue_;
  std::atomic<std::uint64_t> discovered_{0};
  std::atomic<std::uint64_t> root_uploads_{0};
  mutable std::mutex hist_mu_;
  std::map<std::pair<std::uint32_t, bool>, std::uint64_t> histogram_;
};

enum class SearchError {
  none,
  capacity,      // a hash set or id table filled up
  incompatible,  // the model produced states the storage cannot hold
  other,
};

struct SearchStats {
  std::uint64_t visited_roots = 0;
  std::uint64_t transitions = 0;
  double wall_time_s = 0.0;
  StoreStats store;
  /// Uploads per (result length, root flag), duplicates included.
  std::map<std::pair<std::uint32_t, bool>, std::uint64_t> histogram;
  SearchError error = SearchError::none;
  std::string error_message;
};

/// Parallel BFS reachability: seeds via model.initial_state, then `threads`
/// workers pop root states and expand them with model.next_states until
/// quiescence. The visited root set is independent of the thread count. A
/// storage error aborts the run; the returned stats are then partial and
/// carry the error classification.
SearchStats run(Model& model, StateStore& store, int threads);

}  // namespace vlstore
