#pragma once

#include <functional>
#include <string>
#include <vector>

#include "doef/def/root_selector.hpp"
#include "doef/sim/simulator.hpp"
#include "doef/workload/trace_io.hpp"

namespace doef::harness {

struct ExperimentSpec {
  std::string name = "custom";
  ocb::SchemaParams db;
  workload::WorkloadParams workload;
  def::SelectorConfig selector;
  sim::SimConfig sim;
  cluster::ClustererConfig clustering;  ///< parameters; the kind is taken from `clusterers`
  std::vector<cluster::ClustererKind> clusterers{cluster::ClustererKind::none};
  std::size_t transactions = 10'000;
  std::vector<double> h_values;
  std::uint64_t seed = 1;

  void validate() const;
};

/// 2^-11, 2^-10, ..., 2^0.
std::vector<double> default_h_grid();

/// Short label of the root-selection setup, e.g. `moving_window` or `hybrid+s_ref/moving_window`.
std::string protocol_label(const ExperimentSpec& spec);

struct SweepRow {
  double h = 1.0;
  std::string protocol;
  cluster::ClustererKind clusterer = cluster::ClustererKind::none;
  sim::SimMetrics metrics;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
};

/// Generates the transactions of one cell. `db` is modified only by evolution workloads.
workload::AccessTrace generate_trace(ocb::Database& db, const ExperimentSpec& spec, double h);

/// One cell on a prepared database and trace.
SweepRow run_cell(const ExperimentSpec& spec, double h, cluster::ClustererKind kind, const ocb::Database& initial,
                  const ocb::Database& evolved, const workload::AccessTrace& trace);

using Progress = std::function<void(const SweepRow&)>;

/// One row per (h, clusterer). The trace of an h value is shared by all clusterers.
SweepResult run_experiment(const ExperimentSpec& spec, const Progress& progress = {});

}  // namespace doef::harness
