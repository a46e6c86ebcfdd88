#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "vlstore/search.hpp"

namespace vlstore {

/// Flat fixed-length model: one slot per counter, each successor increments
/// one counter modulo `modulus`. Reachable states: modulus^counters.
class CountersModel final : public Model {
public:
  explicit CountersModel(std::uint32_t counters = 4, std::uint32_t modulus = 10);

  std::string name() const override { return "counters"; }
  void initial_state(SearchContext& ctx) override;
  void next_states(SearchContext& ctx, StateID s) override;

private:
  std::uint32_t counters_;
  std::uint32_t modulus_;
};

/// Tree-of-states model: the root vector is [n, p0, ..., p(n-1)] where each
/// p is a 2-slot embedded StateID of a process sub-state {pc, i} stored with
/// root=false. pc stays 1; each step increments one process's i mod 10 and
/// rewrites the embedding. Reachable root states: 10^n.
class ProcessTreeModel : public Model {
public:
  explicit ProcessTreeModel(std::uint32_t n = 4);

  std::string name() const override { return "process_tree"; }
  void initial_state(SearchContext& ctx) override;
  void next_states(SearchContext& ctx, StateID s) override;
  Vector dump_state(const StateStore& store, StateID id) const override;

protected:
  static constexpr std::uint32_t kModulus = 10;

  std::uint32_t process_offset(std::uint32_t p) const { return 1 + 2 * p; }

  std::uint32_t n_;
};

/// Same state encoding and reachable set as ProcessTreeModel, but each step
/// is one recursive get plus one recursive sparse delta routed through the
/// embedded StateID instead of explicit sub-state and root rewrites.
class ProcessTreeRecursiveModel final : public ProcessTreeModel {
public:
  explicit ProcessTreeRecursiveModel(std::uint32_t n = 4)
      : ProcessTreeModel(n) {}

  std::string name() const override { return "process_tree_recursive"; }
  void next_states(SearchContext& ctx, StateID s) override;
};

/// Variable-length model: the root [P, heap] embeds a heap sub-state
/// [appends_so_far, a1, a2, ...] that grows by one slot per step. Each of
/// the P processes may append its number at most K times, giving heap
/// lengths 1 .. P*K + 1 and a non-degenerate length histogram.
class DynAllocModel final : public Model {
public:
  explicit DynAllocModel(std::uint32_t processes = 2,
                         std::uint32_t max_appends = 2);

  std::string name() const override { return "dyn_alloc"; }
  void initial_state(SearchContext& ctx) override;
  void next_states(SearchContext& ctx, StateID s) override;
  Vector dump_state(const StateStore& store, StateID id) const override;

private:
  std::uint32_t processes_;
  std::uint32_t max_appends_;
};

/// Builds a model by CLI name with string parameters. Understood names:
/// counters (args: counters, modulus), process_tree (n),
/// process_tree_recursive (n), dyn_alloc (p, k). Unknown names, unknown
/// args, or unparsable values throw ConfigError.
std::unique_ptr<Model> make_model(
    const std::string& name,
    const std::map<std::string, std::string>& args);

}  // namespace vlstore
