#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "vlstore/search.hpp"

namespace vlstore {

struct RunConfig {
  std::string model = "counters";
  std::map<std::string, std::string> model_args;
  std::string storage = "dtree";
  int scale_root = 20;
  int scale_data = 20;
  int scale_sub = 20;            // cchm side of the hybrid
  std::uint32_t pad_length = 0;  // 0 = unset; required for padded stores
  int threads = 1;
  std::string format = "table";
  bool show_histogram = false;
};

/// Everything one run reports. Memory is given both as occupied entries and
/// as preallocated footprint, and bytes-per-state with both plausible
/// denominators (distinct visited roots, and all uploads including
/// duplicates), since either convention is defensible.
struct RunReport {
  RunConfig config;
  std::uint64_t visited_roots = 0;
  std::uint64_t transitions = 0;
  std::uint64_t total_inserts = 0;  // every upload during the run
  double wall_time_s = 0.0;
  std::uint64_t node_count = 0;
  std::uint64_t memory_bytes = 0;
  std::uint64_t allocated_bytes = 0;
  double bytes_per_state = 0.0;            // memory_bytes / visited_roots
  double bytes_per_state_allocated = 0.0;  // allocated_bytes / visited_roots
  double bytes_per_insert = 0.0;           // memory_bytes / total_inserts
  std::map<std::pair<std::uint32_t, bool>, std::uint64_t> histogram;
  std::string error;  // empty on success
};

RunReport make_report(const RunConfig& config, const SearchStats& stats);

void write_report_table(const RunReport& r, std::ostream& out);
void write_report_json(const RunReport& r, std::ostream& out);
void write_report_csv(const RunReport& r, std::ostream& out);

/// One schema analyzer step of a shapes scenario.
struct ShapeRow {
  std::string schema;
  std::size_t step = 0;       // 1-based insert position
  std::uint32_t length = 0;   // vector length inserted
  std::uint64_t nodes_added = 0;
  std::uint64_t total_nodes = 0;
};

void write_shapes_table(const std::vector<ShapeRow>& rows, std::ostream& out);
void write_shapes_json(const std::vector<ShapeRow>& rows, std::ostream& out);
void write_shapes_csv(const std::vector<ShapeRow>& rows, std::ostream& out);

}  // namespace vlstore
