#include "vlstore/report.hpp"

#include <iomanip>

#include <json.hpp>

namespace vlstore {
namespace {

using nlohmann::json;

/// Doubles go through the JSON serializer everywhere so table, JSON and CSV
/// print bit-identical values.
std::string num(double x) { return json(x).dump(); }

std::string error_label(const SearchStats& stats) {
  switch (stats.error) {
    case SearchError::none: return "";
    case SearchError::capacity: return "capacity: " + stats.error_message;
    case SearchError::incompatible:
      return "incompatible: " + stats.error_message;
    case SearchError::other: return "error: " + stats.error_message;
  }
  return stats.error_message;
}

json config_json(const RunConfig& c) {
  json args = json::object();
  for (const auto& [k, v] : c.model_args) {
    args[k] = v;
  }
  return json{{"model", c.model},         {"model_args", args},
              {"storage", c.storage},     {"scale_root", c.scale_root},
              {"scale_data", c.scale_data}, {"scale_sub", c.scale_sub},
              {"pad_length", c.pad_length}, {"threads", c.threads}};
}

std::string describe_model(const RunConfig& c) {
  std::string s = c.model;
  if (!c.model_args.empty()) {
    s += " (";
    bool first = true;
    for (const auto& [k, v] : c.model_args) {
      if (!first) {
        s += ", ";
      }
      s += k + "=" + v;
      first = false;
    }
    s += ")";
  }
  return s;
}

std::string describe_storage(const RunConfig& c) {
  std::string s = c.storage + " (scale " + std::to_string(c.scale_root) + "-" +
                  std::to_string(c.scale_data);
  if (c.storage == "treedbs_x_cchm") {
    s += "-" + std::to_string(c.scale_sub);
  }
  s += ")";
  if (c.pad_length > 0) {
    s += " L=" + std::to_string(c.pad_length);
  }
  return s;
}

}  // namespace

RunReport make_report(const RunConfig& config, const SearchStats& stats) {
  RunReport r;
  r.config = config;
  r.visited_roots = stats.visited_roots;
  r.transitions = stats.transitions;
  for (const auto& [key, count] : stats.histogram) {
    r.total_inserts += count;
  }
  r.wall_time_s = stats.wall_time_s;
  r.node_count = stats.store.node_count;
  r.memory_bytes = stats.store.memory_bytes;
  r.allocated_bytes = stats.store.allocated_bytes;
  if (r.visited_roots > 0) {
    r.bytes_per_state =
        static_cast<double>(r.memory_bytes) / static_cast<double>(r.visited_roots);
    r.bytes_per_state_allocated = static_cast<double>(r.allocated_bytes) /
                                  static_cast<double>(r.visited_roots);
  }
  if (r.total_inserts > 0) {
    r.bytes_per_insert =
        static_cast<double>(r.memory_bytes) / static_cast<double>(r.total_inserts);
  }
  r.histogram = stats.histogram;
  r.error = error_label(stats);
  return r;
}

void write_report_table(const RunReport& r, std::ostream& out) {
  auto line = [&](const char* key, const std::string& value) {
    out << std::left << std::setw(27) << key << value << "\n";
  };
  line("model", describe_model(r.config));
  line("storage", describe_storage(r.config));
  line("threads", std::to_string(r.config.threads));
  line("visited_roots", std::to_string(r.visited_roots));
  line("transitions", std::to_string(r.transitions));
  line("total_inserts", std::to_string(r.total_inserts));
  line("wall_time_s", num(r.wall_time_s));
  line("node_count", std::to_string(r.node_count));
  line("memory_bytes", std::to_string(r.memory_bytes));
  line("allocated_bytes", std::to_string(r.allocated_bytes));
  line("bytes_per_state", num(r.bytes_per_state));
  line("bytes_per_state_allocated", num(r.bytes_per_state_allocated));
  line("bytes_per_insert", num(r.bytes_per_insert));
  if (!r.error.empty()) {
    line("error", r.error);
  }
  if (r.config.show_histogram) {
    out << "\nlength histogram (uploads)\n";
    out << "  length  kind  count\n";
    for (const auto& [key, count] : r.histogram) {
      out << "  " << std::right << std::setw(6) << key.first << "  "
          << (key.second ? "root" : "sub ") << "  " << count << "\n";
    }
  }
}

void write_report_json(const RunReport& r, std::ostream& out) {
  json hist = json::array();
  for (const auto& [key, count] : r.histogram) {
    hist.push_back(json{
        {"length", key.first}, {"root", key.second}, {"count", count}});
  }
  const json j{{"config", config_json(r.config)},
               {"visited_roots", r.visited_roots},
               {"transitions", r.transitions},
               {"total_inserts", r.total_inserts},
               {"wall_time_s", r.wall_time_s},
               {"node_count", r.node_count},
               {"memory_bytes", r.memory_bytes},
               {"allocated_bytes", r.allocated_bytes},
               {"bytes_per_state", r.bytes_per_state},
               {"bytes_per_state_allocated", r.bytes_per_state_allocated},
               {"bytes_per_insert", r.bytes_per_insert},
               {"histogram", hist},
               {"error", r.error}};
  out << j.dump(2) << "\n";
}

void write_report_csv(const RunReport& r, std::ostream& out) {
  auto row = [&](const char* key, const std::string& value) {
    out << "run," << key << "," << value << "\n";
  };
  row("model", r.config.model);
  std::string args;
  for (const auto& [k, v] : r.config.model_args) {
    if (!args.empty()) {
      args += ";";
    }
    args += k + "=" + v;
  }
  row("model_args", args);
  row("storage", r.config.storage);
  row("scale_root", std::to_string(r.config.scale_root));
  row("scale_data", std::to_string(r.config.scale_data));
  row("scale_sub", std::to_string(r.config.scale_sub));
  row("pad_length", std::to_string(r.config.pad_length));
  row("threads", std::to_string(r.config.threads));
  row("visited_roots", std::to_string(r.visited_roots));
  row("transitions", std::to_string(r.transitions));
  row("total_inserts", std::to_string(r.total_inserts));
  row("wall_time_s", num(r.wall_time_s));
  row("node_count", std::to_string(r.node_count));
  row("memory_bytes", std::to_string(r.memory_bytes));
  row("allocated_bytes", std::to_string(r.allocated_bytes));
  row("bytes_per_state", num(r.bytes_per_state));
  row("bytes_per_state_allocated", num(r.bytes_per_state_allocated));
  row("bytes_per_insert", num(r.bytes_per_insert));
  row("error", r.error);
  if (r.config.show_histogram) {
    for (const auto& [key, count] : r.histogram) {
      out << "hist," << key.first << "," << (key.second ? "root" : "sub")
          << "," << count << "\n";
    }
  }
}

void write_shapes_table(const std::vector<ShapeRow>& rows, std::ostream& out) {
  out << std::left << std::setw(16) << "schema" << std::right << std::setw(6)
      << "step" << std::setw(8) << "length" << std::setw(7) << "added"
      << std::setw(7) << "total" << "\n";
  for (const ShapeRow& row : rows) {
    out << std::left << std::setw(16) << row.schema << std::right
        << std::setw(6) << row.step << std::setw(8) << row.length
        << std::setw(7) << row.nodes_added << std::setw(7) << row.total_nodes
        << "\n";
  }
}

void write_shapes_json(const std::vector<ShapeRow>& rows, std::ostream& out) {
  json arr = json::array();
  for (const ShapeRow& row : rows) {
    arr.push_back(json{{"schema", row.schema},
                       {"step", row.step},
                       {"length", row.length},
                       {"nodes_added", row.nodes_added},
                       {"total_nodes", row.total_nodes}});
  }
  out << json{{"shapes", arr}}.dump(2) << "\n";
}

void write_shapes_csv(const std::vector<ShapeRow>& rows, std::ostream& out) {
  for (const ShapeRow& row : rows) {
    out << "shape," << row.schema << "," << row.step << "," << row.length
        << "," << row.nodes_added << "," << row.total_nodes << "\n";
  }
}

}  // namespace vlstore
