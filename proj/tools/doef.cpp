// Command-line front end: database generation, trace export, single runs, sweeps and reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "doef/config.hpp"
#include "doef/harness/presets.hpp"
#include "doef/harness/report.hpp"
#include "doef/harness/spec_config.hpp"
#include "doef/ocb/db_io.hpp"

namespace {

using namespace doef;

struct SpecOptions {
  std::string preset;
  std::string config;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App* app) {
    app->add_option("--preset", preset, "start from a named experiment preset");
    app->add_option("--config", config, "KEY = value configuration file");
    app->add_option("--seed", seed, "master seed");
  }

  harness::ExperimentSpec build() const {
    harness::ExperimentSpec spec;
    spec.h_values = harness::default_h_grid();
    if (!preset.empty()) spec = harness::preset(preset);
    if (!config.empty()) harness::apply_config(Config::load(config), spec);
    if (seed) spec.seed = *seed;
    return spec;
  }
};

/// Writes to `path`, or stdout when it is empty or "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  fn(out);
}

ocb::Database database_for(const harness::ExperimentSpec& spec, const std::string& db_path) {
  if (!db_path.empty()) return ocb::load_database(db_path);
  return ocb::generate_database(spec.db, spec.seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic object database benchmark: workloads, storage simulation and clustering sweeps"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help message and exit");

  SpecOptions gen_opts, trace_opts, run_opts, sweep_opts;
  std::string out_path, db_path, trace_path, format = "csv", in_path;
  double h = 1.0;
  std::string clusterer = "nc";
  std::vector<std::string> clusterers;
  bool quiet = false;

  auto* gen = app.add_subcommand("gen", "generate a database");
  gen_opts.attach(gen);
  gen->add_option("--out", out_path, "database file")->required();

  auto* trace = app.add_subcommand("trace", "generate an access trace for one H value");
  trace_opts.attach(trace);
  trace->add_option("--h", h, "rate of change");
  trace->add_option("--db", db_path, "database file (default: generate)");
  trace->add_option("--out", out_path, "trace file (default: stdout)");

  auto* run = app.add_subcommand("run", "simulate a single (H, clusterer) cell");
  run_opts.attach(run);
  run->add_option("--h", h, "rate of change");
  run->add_option("--clusterer", clusterer, "nc, dstc, dro, gp or prp");
  run->add_option("--db", db_path, "database file (default: generate)");
  run->add_option("--trace", trace_path, "replay this trace instead of generating one");
  run->add_option("--format", format, "csv, table or plotdata");
  run->add_option("--out", out_path, "metrics output (default: stdout)");

  auto* sweep = app.add_subcommand("sweep", "run every (H, clusterer) cell of an experiment");
  sweep_opts.attach(sweep);
  sweep->add_option("--clusterer", clusterers, "restrict to these clusterers");
  sweep->add_option("--format", format, "csv, table or plotdata");
  sweep->add_option("--out", out_path, "metrics output (default: stdout)");
  sweep->add_flag("--quiet", quiet, "no progress lines on stderr");

  auto* report = app.add_subcommand("report", "render a metrics CSV");
  report->add_option("--in", in_path, "metrics CSV")->required();
  report->add_option("--format", format, "csv, table or plotdata");
  report->add_option("--out", out_path, "output (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto spec = gen_opts.build();
      spec.db.validate();
      ocb::save_database(out_path, ocb::generate_database(spec.db, spec.seed));
    } else if (trace->parsed()) {
      const auto spec = trace_opts.build();
      auto db = database_for(spec, db_path);
      const auto t = harness::generate_trace(db, spec, h);
      with_output(out_path, [&](std::ostream& os) { workload::write_trace(os, t); });
    } else if (run->parsed()) {
      auto spec = run_opts.build();
      spec.h_values = {h};
      spec.clusterers = {cluster::parse_clusterer_kind(clusterer)};
      spec.validate();
      const auto fmt = harness::parse_report_format(format);
      const auto initial = database_for(spec, db_path);
      auto evolved = initial;
      const auto t = trace_path.empty() ? harness::generate_trace(evolved, spec, h) : workload::load_trace(trace_path);
      harness::SweepResult result;
      result.seed = spec.seed;
      result.config_hash = harness::config_hash(spec);
      result.rows.push_back(harness::run_cell(spec, h, spec.clusterers.front(), initial, evolved, t));
      with_output(out_path, [&](std::ostream& os) { harness::write_report(os, result, fmt); });
    } else if (sweep->parsed()) {
      auto spec = sweep_opts.build();
      if (!clusterers.empty()) {
        spec.clusterers.clear();
        for (const auto& c : clusterers) spec.clusterers.push_back(cluster::parse_clusterer_kind(c));
      }
      const auto fmt = harness::parse_report_format(format);
      const auto result = harness::run_experiment(spec, [&](const harness::SweepRow& row) {
        if (!quiet) {
          std::cerr << "H=" << harness::format_h(row.h) << ' ' << cluster::to_string(row.clusterer)
                    << " total_io=" << row.metrics.total_io << '\n';
        }
      });
      with_output(out_path, [&](std::ostream& os) { harness::write_report(os, result, fmt); });
    } else if (report->parsed()) {
      std::ifstream in(in_path);
      if (!in) throw std::runtime_error("cannot open " + in_path);
      const auto result = harness::read_csv(in);
      with_output(out_path, [&](std::ostream& os) {
        harness::write_report(os, result, harness::parse_report_format(format));
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
