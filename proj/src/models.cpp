#include "vlstore/models.hpp"

#include <charconv>
#include <stdexcept>

namespace vlstore {

// --------------------------------------------------------------------------
// counters

CountersModel::CountersModel(std::uint32_t counters, std::uint32_t modulus)
    : counters_(counters), modulus_(modulus) {
  if (counters_ == 0 || counters_ > kMaxStateLength) {
    throw ConfigError("counters: counter count outside [1, 2^24 - 1]");
  }
  if (modulus_ == 0) {
    throw ConfigError("counters: modulus must be positive");
  }
}

void CountersModel::initial_state(SearchContext& ctx) {
  ctx.insert(Vector(counters_, 0), true);
}

void CountersModel::next_states(SearchContext& ctx, StateID s) {
  for (std::uint32_t i = 0; i < counters_; ++i) {
    const Slot v = ctx.get_partial(s, i, 1, true)[0];
    const Slot next = (v + 1) % modulus_;
    ctx.delta(s, i, Vector{next}, true);
  }
}

// --------------------------------------------------------------------------
// process_tree

ProcessTreeModel::ProcessTreeModel(std::uint32_t n) : n_(n) {
  if (n_ == 0 || 1 + 2ull * n_ > kMaxStateLength) {
    throw ConfigError("process_tree: process count out of range");
  }
}

void ProcessTreeModel::initial_state(SearchContext& ctx) {
  const Vector process{1, 0};  // pc = 1, i = 0
  const InsertResult init_p = ctx.insert(process, false);
  Vector root(1 + 2 * n_);
  root[0] = n_;
  for (std::uint32_t p = 0; p < n_; ++p) {
    encode_state_id(init_p.id, root[process_offset(p)],
                    root[process_offset(p) + 1]);
  }
  ctx.insert(root, true);
}

void ProcessTreeModel::next_states(SearchContext& ctx, StateID s) {
  for (std::uint32_t p = 0; p < n_; ++p) {
    const std::uint32_t off = process_offset(p);
    const Vector embedded = ctx.get_partial(s, off, 2, true);
    const StateID pid = decode_state_id(embedded[0], embedded[1]);
    const Slot i = ctx.get_partial(pid, 1, 1, false)[0];
    const InsertResult sub =
        ctx.delta(pid, 1, Vector{(i + 1) % kModulus}, false);
    ctx.delta(s, off, encode_state_id(sub.id), true);
  }
}

Vector ProcessTreeModel::dump_state(const StateStore& store,
                                    StateID id) const {
  const Vector root = store.get(id, true);
  Vector out;
  out.push_back(root[0]);
  for (std::uint32_t p = 0; p < n_; ++p) {
    const std::uint32_t off = process_offset(p);
    const StateID pid = decode_state_id(root[off], root[off + 1]);
    const Vector sub = store.get(pid, false);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

// --------------------------------------------------------------------------
// process_tree_recursive

void ProcessTreeRecursiveModel::next_states(SearchContext& ctx, StateID s) {
  for (std::uint32_t p = 0; p < n_; ++p) {
    const std::uint32_t off = process_offset(p);
    const Slot i = ctx.get_recursive(s, OffsetPath{off, 1}, 1)[0];
    SparseDeltaList deltas;
    deltas.push_back(SparseDelta{1, Vector{(i + 1) % kModulus}});
    ctx.delta_recursive_sparse(s, OffsetPath{off}, deltas);
  }
}

// --------------------------------------------------------------------------
// dyn_alloc

DynAllocModel::DynAllocModel(std::uint32_t processes, std::uint32_t max_appends)
    : processes_(processes), max_appends_(max_appends) {
  if (processes_ == 0 || max_appends_ == 0) {
    throw ConfigError("dyn_alloc: processes and appends must be positive");
  }
  if (1ull + static_cast<std::uint64_t>(processes_) * max_appends_ >
      kMaxStateLength) {
    throw ConfigError("dyn_alloc: heap would outgrow the maximum length");
  }
}

void DynAllocModel::initial_state(SearchContext& ctx) {
  const InsertResult heap = ctx.insert(Vector{0}, false);
  Vector root(3);
  root[0] = processes_;
  encode_state_id(heap.id, root[1], root[2]);
  ctx.insert(root, true);
}

void DynAllocModel::next_states(SearchContext& ctx, StateID s) {
  const Vector embedded = ctx.get_partial(s, 1, 2, true);
  const StateID heap_id = decode_state_id(embedded[0], embedded[1]);
  const Vector heap = ctx.get(heap_id, false);
  const Slot count = heap[0];
  for (std::uint32_t p = 1; p <= processes_; ++p) {
    std::uint32_t used = 0;
    for (std::size_t i = 1; i < heap.size(); ++i) {
      if (heap[i] == p) {
        ++used;
      }
    }
    if (used >= max_appends_) {
      continue;
    }
    SparseDeltaList deltas;
    deltas.push_back(SparseDelta{0, Vector{count + 1}});
    deltas.push_back(SparseDelta{count + 1, Vector{p}});
    const InsertResult grown = ctx.delta_sparse(heap_id, deltas, false);
    ctx.delta(s, 1, encode_state_id(grown.id), true);
  }
}

Vector DynAllocModel::dump_state(const StateStore& store, StateID id) const {
  const Vector root = store.get(id, true);
  const StateID heap_id = decode_state_id(root[1], root[2]);
  Vector out{root[0]};
  const Vector heap = store.get(heap_id, false);
  out.insert(out.end(), heap.begin(), heap.end());
  return out;
}

// --------------------------------------------------------------------------
// factory

namespace {

std::uint32_t parse_u32(const std::string& key, const std::string& value) {
  std::uint32_t out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("model argument " + key + " is not a valid number: " +
                      value);
  }
  return out;
}

std::uint32_t take(std::map<std::string, std::string>& args,
                   const std::string& key, std::uint32_t fallback) {
  auto it = args.find(key);
  if (it == args.end()) {
    return fallback;
  }
  const std::uint32_t v = parse_u32(key, it->second);
  args.erase(it);
  return v;
}

void reject_leftovers(const std::map<std::string, std::string>& args,
                      const std::string& model) {
  if (!args.empty()) {
    throw ConfigError("model " + model + " does not understand argument " +
                      args.begin()->first);
  }
}

}  // namespace

std::unique_ptr<Model> make_model(
    const std::string& name, const std::map<std::string, std::string>& args) {
  std::map<std::string, std::string> rest = args;
  std::unique_ptr<Model> model;
  if (name == "counters") {
    const std::uint32_t counters = take(rest, "counters", 4);
    const std::uint32_t modulus = take(rest, "modulus", 10);
    model = std::make_unique<CountersModel>(counters, modulus);
  } else if (name == "process_tree") {
    model = std::make_unique<ProcessTreeModel>(take(rest, "n", 4));
  } else if (name == "process_tree_recursive") {
    model = std::make_unique<ProcessTreeRecursiveModel>(take(rest, "n", 4));
  } else if (name == "dyn_alloc") {
    const std::uint32_t p = take(rest, "p", 2);
    const std::uint32_t k = take(rest, "k", 2);
    model = std::make_unique<DynAllocModel>(p, k);
  } else {
    throw ConfigError("unknown model: " + name);
  }
  reject_leftovers(rest, name);
  return model;
}

}  // namespace vlstore
