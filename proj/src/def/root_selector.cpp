#include "doef/def/root_selector.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace doef::def {

std::string_view to_string(SelectorMode m) {
  switch (m) {
    case SelectorMode::regional: return "regional";
    case SelectorMode::hybrid: return "hybrid";
    case SelectorMode::integrated: return "integrated";
  }
  return "?";
}

SelectorMode parse_selector_mode(std::string_view s) {
  if (s == "regional") return SelectorMode::regional;
  if (s == "hybrid") return SelectorMode::hybrid;
  if (s == "integrated") return SelectorMode::integrated;
  throw ParameterError("unknown selector mode '" + std::string(s) + "'");
}

std::vector<std::size_t> map_candidates_to_regions(std::size_t m, const HRegionSet& layout) {
  std::vector<double> cum;
  double acc = 0.0;
  for (const auto& r : layout.regions) cum.push_back(acc += r.hr_size);
  std::vector<std::size_t> out(m);
  if (cum.empty()) return out;
  for (std::size_t j = 0; j < m; ++j) {
    const double q = (static_cast<double>(j) + 0.5) / static_cast<double>(m) * acc;
    const auto it = std::upper_bound(cum.begin(), cum.end(), q);
    out[j] = std::min<std::size_t>(static_cast<std::size_t>(it - cum.begin()), cum.size() - 1);
  }
  return out;
}

RootSelector::RootSelector(const ocb::Database& db, const SelectorConfig& cfg, std::uint64_t seed,
                           workload::OpKind op_kind)
    : db_(&db), cfg_(cfg), seed_(seed) {
  const auto live = db.alive_oids();
  if (live.empty()) throw ParameterError("root selection needs a non-empty database");

  if (cfg.mode == SelectorMode::regional) {
    regional_ = std::make_unique<RegionalDriver>(cfg.regional, live, derive_seed(seed, 31),
                                                 [&db](Oid o) { return db.objects[o].class_id; });
    return;
  }

  cfg.dependency.validate();
  if (cfg.mode == SelectorMode::integrated && cfg.dependency.traversed_dep_prob > 0.0 &&
      !workload::is_deterministic_traversal(op_kind)) {
    throw ParameterError("integration over traversed sets requires a deterministic traversal");
  }
  mix_ = cfg.dependency.mix();
  random_fn_ = cfg.random_hot_fraction >= 1.0
                   ? uniform_random_fn(live)
                   : hot_cold_random_fn(live, cfg.random_hot_fraction, cfg.random_hot_prob, derive_seed(seed, 32));
  if (cfg.dependency.dref_dep_prob > 0.0) d_refs_ = generate_d_refs(db, cfg.dependency.d, seed);
  if (cfg.mode == SelectorMode::integrated) regional_ = std::make_unique<RegionalDriver>(cfg.regional);
}

Oid RootSelector::next(Rng& rng) {
  Oid root;
  if (cfg_.mode == SelectorMode::regional) {
    root = regional_->select(rng);
  } else {
    root = next_hybrid(rng);
    if (regional_) regional_->tick();
  }
  prev_root_ = root;
  ++selections_;
  return root;
}

void RootSelector::observe(const workload::AccessRecord& record) { prev_trace_ = record; }

std::vector<Oid> RootSelector::candidates(DepKind kind) const {
  const Oid prev = prev_root_.value_or(0);
  switch (kind) {
    case DepKind::random: return {};
    case DepKind::s_ref: return prev_root_ ? sref_candidates(*db_, prev) : std::vector<Oid>{};
    case DepKind::d_ref: return prev_root_ ? dref_candidates(d_refs_, prev) : std::vector<Oid>{};
    case DepKind::traversed:
      return prev_trace_ ? traversed_candidates(*prev_trace_, cfg_.dependency.c) : std::vector<Oid>{};
    case DepKind::same_class:
      return prev_root_ ? same_class_candidates(*db_, prev, cfg_.dependency.u) : std::vector<Oid>{};
  }
  return {};
}

Oid RootSelector::next_hybrid(Rng& rng) {
  if (phase_ == HybridPhase::randomize) {
    last_kind_ = DepKind::random;
    ++kind_counts_[0];
    if (cfg_.dependency.r > 0) {
      phase_ = HybridPhase::dependency;
      remaining_ = cfg_.dependency.r;
    }
    return dep_random(rng, random_fn_);
  }

  const auto kind = static_cast<DepKind>(std::discrete_distribution<int>(mix_.begin(), mix_.end())(rng));
  last_kind_ = kind;
  ++kind_counts_[static_cast<std::size_t>(kind)];
  if (--remaining_ == 0) phase_ = HybridPhase::randomize;

  if (kind == DepKind::random) return dep_random(rng, random_fn_);
  auto cands = candidates(kind);
  if (cands.empty()) {
    ++fallbacks_;
    return dep_random(rng, random_fn_);
  }
  if (cfg_.mode == SelectorMode::integrated) return integrated_pick(std::move(cands), rng);
  return *pick_uniform(cands, rng);
}

Oid RootSelector::integrated_pick(std::vector<Oid> cands, Rng& rng) {
  if (cands.size() == 1) return cands.front();
  // Candidate order fixes the region mapping; it depends only on the previous root.
  if (cfg_.regional.regions.assign_method == AssignMethod::by_class) {
    std::stable_sort(cands.begin(), cands.end(),
                     [&](Oid a, Oid b) { return db_->objects[a].class_id < db_->objects[b].class_id; });
  } else {
    Rng order(derive_seed(seed_, mix64(prev_root_.value_or(0)) ^ 0x33));
    std::shuffle(cands.begin(), cands.end(), order);
  }
  const auto& layout = regional_->state().set;
  const auto where = map_candidates_to_regions(cands.size(), layout);

  std::map<std::size_t, std::vector<Oid>> groups;
  for (std::size_t j = 0; j < cands.size(); ++j) groups[where[j]].push_back(cands[j]);
  std::vector<double> weights;
  std::vector<const std::vector<Oid>*> members;
  double total = 0.0;
  for (const auto& [k, g] : groups) {
    weights.push_back(layout.regions[k].prob_w);
    members.push_back(&g);
    total += layout.regions[k].prob_w;
  }
  if (!(total > 0.0)) return *pick_uniform(cands, rng);
  const auto& g = *members[std::discrete_distribution<std::size_t>(weights.begin(), weights.end())(rng)];
  return g[uniform_int<std::size_t>(rng, 0, g.size() - 1)];
}

}  // namespace doef::def
