#include "vlstore/search.hpp"

#include <chrono>
#include <exception>
#include <thread>
#include <vector>

namespace vlstore {

Vector Model::dump_state(const StateStore& store, StateID id) const {
  return store.get(id, true);
}

void WorkQueue::push(StateID id) {
  {
    std::lock_guard lock(mu_);
    items_.push_back(id);
    ++pending_;
  }
  cv_.notify_one();
}

std::optional<StateID> WorkQueue::pop() {
  std::unique_lock lock(mu_);
  cv_.wait(lock,
           [this] { return abort_ || !items_.empty() || pending_ == 0; });
  if (abort_ || items_.empty()) {
    return std::nullopt;
  }
  StateID id = items_.front();
  items_.pop_front();
  return id;
}

void WorkQueue::task_done() {
  bool quiescent = false;
  {
    std::lock_guard lock(mu_);
    quiescent = (--pending_ == 0);
  }
  if (quiescent) {
    cv_.notify_all();
  }
}

void WorkQueue::abort() {
  {
    std::lock_guard lock(mu_);
    abort_ = true;
  }
  cv_.notify_all();
}

bool WorkQueue::aborted() const {
  std::lock_guard lock(mu_);
  return abort_;
}

InsertResult SearchContext::uploaded(InsertResult r, bool root) {
  {
    std::lock_guard lock(hist_mu_);
    ++histogram_[{r.id.length(), root}];
  }
  if (root) {
    root_uploads_.fetch_add(1, std::memory_order_relaxed);
    if (r.is_new) {
      discovered_.fetch_add(1, std::memory_order_relaxed);
      queue_.push(r.id);
    }
  }
  return r;
}

InsertResult SearchContext::insert(std::span<const Slot> v, bool root) {
  return uploaded(store_.insert(v, root), root);
}

InsertResult SearchContext::delta(StateID id, std::uint32_t offset,
                                  std::span<const Slot> d, bool root) {
  return uploaded(store_.delta(id, offset, d, root), root);
}

InsertResult SearchContext::delta_sparse(StateID id,
                                         const SparseDeltaList& deltas,
                                         bool root) {
  return uploaded(store_.delta_sparse(id, deltas, root), root);
}

InsertResult SearchContext::delta_recursive_sparse(
    StateID id, const OffsetPath& path, const SparseDeltaList& deltas) {
  // The outermost rewrite is by contract a root state.
  return uploaded(store_.delta_recursive_sparse(id, path, deltas), true);
}

std::map<std::pair<std::uint32_t, bool>, std::uint64_t>
SearchContext::histogram() const {
  std::lock_guard lock(hist_mu_);
  return histogram_;
}

namespace {

SearchError classify(const std::exception& e) {
  if (dynamic_cast<const CapacityError*>(&e) != nullptr) {
    return SearchError::capacity;
  }
  if (dynamic_cast<const ReservedValueError*>(&e) != nullptr ||
      dynamic_cast<const LengthError*>(&e) != nullptr) {
    return SearchError::incompatible;
  }
  return SearchError::other;
}

}  // namespace

SearchStats run(Model& model, StateStore& store, int threads) {
  if (threads < 1) {
    throw ConfigError("search: thread count must be at least 1");
  }

  WorkQueue queue;
  SearchContext ctx(store, queue);
  SearchStats stats;
  std::mutex error_mu;

  auto record_error = [&](const std::exception& e) {
    {
      std::lock_guard lock(error_mu);
      if (stats.error == SearchError::none) {
        stats.error = classify(e);
        stats.error_message = e.what();
      }
    }
    queue.abort();
  };

  const auto t0 = std::chrono::steady_clock::now();
  try {
    model.initial_state(ctx);
  } catch (const std::exception& e) {
    record_error(e);
  }
  const std::uint64_t seed_uploads = ctx.root_uploads();

  {
    std::vector<std::jthread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        while (auto id = queue.pop()) {
          try {
            model.next_states(ctx, *id);
          } catch (const std::exception& e) {
            record_error(e);
          }
          queue.task_done();
        }
      });
    }
  }
  const auto t1 = std::chrono::steady_clock::now();

  stats.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
  stats.store = store.stats();
  stats.visited_roots = stats.store.root_occupancy;
  stats.transitions = ctx.root_uploads() - seed_uploads;
  stats.histogram = ctx.histogram();
  return stats;
}

}  // namespace vlstore
