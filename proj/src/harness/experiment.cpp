#include "doef/harness/experiment.hpp"

#include <cmath>
#include <utility>

#include "doef/harness/report.hpp"
#include "doef/harness/spec_config.hpp"

namespace doef::harness {

void ExperimentSpec::validate() const {
  db.validate();
  sim.validate();
  clustering.validate();
  if (h_values.empty()) throw ParameterError("at least one H value is required");
  for (double h : h_values) def::change_interval(h);
  if (transactions < 1) throw ParameterError("TRANSACTIONS must be >= 1");
  if (clusterers.empty()) throw ParameterError("at least one clusterer is required");
  if (selector.mode != def::SelectorMode::regional) selector.dependency.validate();
}

std::vector<double> default_h_grid() {
  std::vector<double> out;
  for (int e = -11; e <= 0; ++e) out.push_back(std::ldexp(1.0, e));
  return out;
}

std::string protocol_label(const ExperimentSpec& spec) {
  const auto& sel = spec.selector;
  const std::string regional(def::to_string(sel.regional.protocol));
  if (sel.mode == def::SelectorMode::regional) return regional;
  std::string deps;
  const auto mix = sel.dependency.mix();
  for (std::size_t k = 1; k < mix.size(); ++k) {
    if (mix[k] <= 0.0) continue;
    if (!deps.empty()) deps += '+';
    deps += def::to_string(static_cast<def::DepKind>(k));
  }
  if (deps.empty()) deps = "random";
  if (sel.mode == def::SelectorMode::hybrid) return "hybrid(" + deps + ")";
  return "integrated(" + deps + ")/" + regional;
}

workload::AccessTrace generate_trace(ocb::Database& db, const ExperimentSpec& spec, double h) {
  auto selector_cfg = spec.selector;
  selector_cfg.regional.h_rate = h;
  def::RootSelector selector(db, selector_cfg, spec.seed, spec.workload.op_kind);
  Rng root_rng(derive_seed(spec.seed, 101));
  Rng op_rng(derive_seed(spec.seed, 102));
  const bool evolves = spec.workload.op_kind == workload::OpKind::database_evolution;

  workload::AccessTrace trace;
  trace.records.reserve(spec.transactions);
  for (std::size_t i = 0; i < spec.transactions; ++i) {
    const Oid root = selector.next(root_rng);
    auto rec = evolves ? workload::execute(db, root, spec.workload, op_rng, i)
                       : workload::execute(std::as_const(db), root, spec.workload, op_rng, i);
    selector.observe(rec);
    trace.records.push_back(std::move(rec));
  }
  trace.metadata["seed"] = std::to_string(spec.seed);
  trace.metadata["h"] = format_h(h);
  trace.metadata["protocol"] = protocol_label(spec);
  trace.metadata["op"] = std::string(workload::to_string(spec.workload.op_kind));
  trace.metadata["transactions"] = std::to_string(spec.transactions);
  trace.metadata["dependency_fallbacks"] = std::to_string(selector.fallbacks());
  if (selector.regional()) trace.metadata["change_iterations"] = std::to_string(selector.regional()->change_iterations());
  return trace;
}

SweepRow run_cell(const ExperimentSpec& spec, double h, cluster::ClustererKind kind, const ocb::Database& initial,
                  const ocb::Database& evolved, const workload::AccessTrace& trace) {
  auto cfg = spec.clustering;
  cfg.kind = kind;
  auto clusterer = cluster::make_clusterer(cfg);
  SweepRow row;
  row.h = h;
  row.protocol = protocol_label(spec);
  row.clusterer = kind;
  row.metrics = sim::run_trace(trace.records, sim::place_sequential(initial, spec.sim.page_size), spec.sim,
                               clusterer.get(), &evolved);
  return row;
}

SweepResult run_experiment(const ExperimentSpec& spec, const Progress& progress) {
  spec.validate();
  SweepResult result;
  result.seed = spec.seed;
  result.config_hash = config_hash(spec);
  auto db = ocb::generate_database(spec.db, spec.seed);
  const bool evolves = spec.workload.op_kind == workload::OpKind::database_evolution;
  for (double h : spec.h_values) {
    ocb::Database copy;
    if (evolves) copy = db;
    auto& evolved = evolves ? copy : db;
    const auto trace = generate_trace(evolved, spec, h);
    for (auto kind : spec.clusterers) {
      result.rows.push_back(run_cell(spec, h, kind, db, evolved, trace));
      if (progress) progress(result.rows.back());
    }
  }
  return result;
}

}  // namespace doef::harness
