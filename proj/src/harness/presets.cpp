#include "doef/harness/presets.hpp"

#include <string>

namespace doef::harness {
namespace {

ExperimentSpec regional_experiment(std::string name, def::RegionalKind protocol) {
  ExperimentSpec s;
  s.name = std::move(name);
  s.db.nc = 50;
  s.db.maxnref = 10;
  s.db.basesize = 50;
  s.db.no = 100'000;
  s.db.nreft = 4;
  s.db.attrange = 1;

  s.workload.op_kind = workload::OpKind::simple_traversal;
  s.workload.depth = 2;

  auto& r = s.selector.regional;
  r.protocol = protocol;
  r.regions.hr_size = 0.003;
  r.regions.highest_prob_w = 0.80;
  r.regions.lowest_prob_w = 0.0006;
  r.regions.prob_w_incr_size = 0.02;
  r.regions.assign_method = def::AssignMethod::random;
  s.selector.mode = def::SelectorMode::regional;

  s.sim.page_size = 4096;
  s.sim.buffer_pages = sim::pages_for_megabytes(4.0, s.sim.page_size);
  s.sim.replacement = sim::Replacement::lru;
  s.sim.multiprogramming = 1;

  s.clusterers = {cluster::ClustererKind::none, cluster::ClustererKind::dstc_like, cluster::ClustererKind::dro,
                  cluster::ClustererKind::opcf_gp, cluster::ClustererKind::opcf_prp};
  s.transactions = 10'000;
  s.h_values = default_h_grid();
  s.seed = 1;
  return s;
}

ExperimentSpec sref_experiment(std::string name, def::RegionalKind protocol) {
  auto s = regional_experiment(std::move(name), protocol);
  s.selector.mode = def::SelectorMode::integrated;
  s.selector.dependency = {};
  s.selector.dependency.random_dep_prob = 0.0;
  s.selector.dependency.sref_dep_prob = 1.0;
  s.selector.dependency.r = 1;
  s.selector.random_hot_fraction = 0.03;
  s.selector.random_hot_prob = 0.80;
  return s;
}

}  // namespace

std::vector<std::string_view> preset_names() { return {"fig2a", "fig2b", "fig3a", "fig3b", "fig5_workload"}; }

ExperimentSpec preset(std::string_view name) {
  if (name == "fig2a") return regional_experiment("fig2a", def::RegionalKind::moving_window);
  if (name == "fig2b") return regional_experiment("fig2b", def::RegionalKind::gradual_moving_window);
  if (name == "fig3a") return sref_experiment("fig3a", def::RegionalKind::moving_window);
  if (name == "fig3b") return sref_experiment("fig3b", def::RegionalKind::gradual_moving_window);
  if (name == "fig5_workload") {
    auto s = regional_experiment("fig5_workload", def::RegionalKind::moving_window);
    s.db.no = 400'000;
    s.selector.mode = def::SelectorMode::integrated;
    s.selector.dependency = {};
    s.selector.dependency.random_dep_prob = 0.0;
    s.selector.dependency.traversed_dep_prob = 1.0;
    s.selector.dependency.c = 1.0;
    s.selector.dependency.r = 1;
    s.selector.random_hot_fraction = 0.01;
    s.selector.random_hot_prob = 0.99;
    s.selector.regional.regions.hr_size = 0.05;
    s.sim.buffer_pages = sim::pages_for_megabytes(20.0, s.sim.page_size);
    s.clusterers = {cluster::ClustererKind::none};
    return s;
  }
  throw ParameterError("unknown preset '" + std::string(name) + "'");
}

}  // namespace doef::harness
