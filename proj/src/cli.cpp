#include "vlstore/cli.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vlstore/cchm.hpp"
#include "vlstore/dtree.hpp"
#include "vlstore/hybrid.hpp"
#include "vlstore/models.hpp"
#include "vlstore/report.hpp"
#include "vlstore/schema.hpp"
#include "vlstore/treedbs_pad.hpp"

namespace vlstore {
namespace {

std::unique_ptr<StateStore> make_store(const RunConfig& c) {
  if (c.storage == "dtree") {
    return std::make_unique<DTree>(DTreeConfig{c.scale_root, c.scale_data});
  }
  if (c.storage == "cchm") {
    return std::make_unique<CchmStore>(CchmConfig{c.scale_root});
  }
  if (c.storage == "treedbs_pad") {
    if (c.pad_length == 0) {
      throw ConfigError("treedbs_pad requires --pad-length");
    }
    return std::make_unique<TreePadStore>(
        TreePadConfig{c.pad_length, c.scale_root, c.scale_data});
  }
  if (c.storage == "treedbs_x_cchm") {
    if (c.pad_length == 0) {
      throw ConfigError("treedbs_x_cchm requires --pad-length");
    }
    return std::make_unique<HybridStore>(HybridConfig{
        c.pad_length, c.scale_root, c.scale_data, c.scale_sub});
  }
  throw ConfigError("unknown storage: " + c.storage);
}

std::vector<Vector> load_scenario(const std::string& path) {
  if (path == "fig34") {
    // The classic comparison: a 10-slot vector, then its 11-slot extension.
    Vector ten;
    Vector eleven;
    for (Slot s = 1; s <= 10; ++s) {
      ten.push_back(s);
    }
    for (Slot s = 1; s <= 11; ++s) {
      eleven.push_back(s);
    }
    return {ten, eleven};
  }
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open scenario file: " + path);
  }
  std::vector<Vector> vectors;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    Vector v;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        comma = line.size();
      }
      std::size_t a = pos;
      std::size_t b = comma;
      while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
      while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
      if (a < b) {
        Slot slot = 0;
        auto [ptr, ec] = std::from_chars(line.data() + a, line.data() + b, slot);
        if (ec != std::errc() || ptr != line.data() + b) {
          throw ConfigError("scenario line " + std::to_string(lineno) +
                            ": bad slot value '" + line.substr(a, b - a) + "'");
        }
        v.push_back(slot);
      } else if (comma < line.size()) {
        throw ConfigError("scenario line " + std::to_string(lineno) +
                          ": empty slot entry");
      }
      pos = comma + 1;
    }
    if (!v.empty()) {
      vectors.push_back(std::move(v));
    }
  }
  if (vectors.empty()) {
    throw ConfigError("scenario contains no vectors: " + path);
  }
  return vectors;
}

std::vector<ShapeRow> run_shapes(const std::vector<Vector>& vectors) {
  std::vector<ShapeRow> rows;
  for (SchemaKind kind : kAllSchemaKinds) {
    const std::vector<SchemaInsertReport> reports =
        analyze_schema(kind, vectors);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      rows.push_back(ShapeRow{schema_kind_name(kind), i + 1,
                              static_cast<std::uint32_t>(vectors[i].size()),
                              reports[i].nodes_added,
                              reports[i].total_nodes});
    }
  }
  return rows;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  std::vector<std::string> raw_model_args;
  std::string shapes_file;

  CLI::App app{"parallel reachability bench over variable-length state stores"};
  app.add_option("--model", cfg.model,
                 "counters | process_tree | process_tree_recursive | dyn_alloc")
      ->capture_default_str();
  app.add_option("--model-arg", raw_model_args,
                 "model parameter as key=value (repeatable)");
  app.add_option("--storage", cfg.storage,
                 "dtree | cchm | treedbs_pad | treedbs_x_cchm")
      ->capture_default_str();
  app.add_option("--scale-root", cfg.scale_root,
                 "log2 capacity of the root set (cchm: whole store)")
      ->capture_default_str();
  app.add_option("--scale-data", cfg.scale_data,
                 "log2 capacity of the data set")
      ->capture_default_str();
  app.add_option("--scale-sub", cfg.scale_sub,
                 "log2 capacity of the hybrid's cchm side")
      ->capture_default_str();
  app.add_option("--pad-length", cfg.pad_length,
                 "fixed tree length L (required for padded stores)");
  app.add_option("--threads", cfg.threads, "worker threads")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "table | json | csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  app.add_flag("--histogram", cfg.show_histogram,
               "include the state-length histogram");
  app.add_option("--shapes", shapes_file,
                 "run the schema node-count comparison on a scenario file "
                 "(one vector per line, comma-separated slots) or the "
                 "built-in 'fig34' scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!shapes_file.empty()) {
      const std::vector<ShapeRow> rows = run_shapes(load_scenario(shapes_file));
      if (cfg.format == "json") {
        write_shapes_json(rows, out);
      } else if (cfg.format == "csv") {
        write_shapes_csv(rows, out);
      } else {
        write_shapes_table(rows, out);
      }
      return 0;
    }

    for (const std::string& kv : raw_model_args) {
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--model-arg expects key=value, got: " + kv);
      }
      cfg.model_args[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (cfg.threads < 1) {
      throw ConfigError("--threads must be at least 1");
    }

    const std::unique_ptr<Model> model = make_model(cfg.model, cfg.model_args);
    const std::unique_ptr<StateStore> store = make_store(cfg);
    const SearchStats stats = run(*model, *store, cfg.threads);
    const RunReport report = make_report(cfg, stats);
    if (cfg.format == "json") {
      write_report_json(report, out);
    } else if (cfg.format == "csv") {
      write_report_csv(report, out);
    } else {
      write_report_table(report, out);
    }

    switch (stats.error) {
      case SearchError::none:
        return 0;
      case SearchError::capacity:
        err << "run aborted: " << stats.error_message << "\n";
        return 3;
      case SearchError::incompatible:
        err << "run aborted: " << stats.error_message << "\n";
        return 4;
      case SearchError::other:
        err << "run aborted: " << stats.error_message << "\n";
        return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace vlstore
