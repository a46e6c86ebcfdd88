#pragma once

// Shared search-test plumbing: records which root states a run expanded so
// visited sets can be dumped canonically and compared across runs, storages
// and thread counts.

#include <algorithm>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "vlstore/search.hpp"

namespace vlstore::testing {

/// Wraps a model and records every StateID handed to next_states — exactly
/// the visited root states, since each new root is enqueued and expanded
/// once.
class RecordingModel : public Model {
public:
  explicit RecordingModel(Model& inner) : inner_(inner) {}

  std::string name() const override { return inner_.name(); }
  void initial_state(SearchContext& ctx) override {
    inner_.initial_state(ctx);
  }
  void next_states(SearchContext& ctx, StateID s) override {
    {
      std::lock_guard lock(mu_);
      visited_.push_back(s);
    }
    inner_.next_states(ctx, s);
  }
  Vector dump_state(const StateStore& store, StateID id) const override {
    return inner_.dump_state(store, id);
  }

  std::vector<StateID> visited() const {
    std::lock_guard lock(mu_);
    return visited_;
  }

private:
  Model& inner_;
  mutable std::mutex mu_;
  std::vector<StateID> visited_;
};

/// Sorted, run-independent rendering of a set of visited roots: one line
/// per state, slots comma-separated.
inline std::string canonical_dump(const Model& model, const StateStore& store,
                                  const std::vector<StateID>& ids) {
  std::vector<Vector> vectors;
  vectors.reserve(ids.size());
  for (StateID id : ids) {
    vectors.push_back(model.dump_state(store, id));
  }
  std::sort(vectors.begin(), vectors.end());
  std::ostringstream out;
  for (const Vector& v : vectors) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) {
        out << ',';
      }
      out << v[i];
    }
    out << '\n';
  }
  return out.str();
}

/// Runs the model on the store and returns the canonical dump of every
/// visited root state.
inline std::string explore_and_dump(Model& model, StateStore& store,
                                    int threads,
                                    SearchStats* stats_out = nullptr) {
  RecordingModel recording(model);
  const SearchStats stats = run(recording, store, threads);
  if (stats_out != nullptr) {
    *stats_out = stats;
  }
  return canonical_dump(model, store, recording.visited());
}

}  // namespace vlstore::testing
