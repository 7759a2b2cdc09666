#include "doef/def/dependency.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <unordered_set>

#include "doef/def/hregions.hpp"

namespace doef::def {

std::string_view to_string(DepKind k) {
  switch (k) {
    case DepKind::random: return "random";
    case DepKind::s_ref: return "s_ref";
    case DepKind::d_ref: return "d_ref";
    case DepKind::traversed: return "traversed";
    case DepKind::same_class: return "same_class";
  }
  return "?";
}

std::vector<double> DependencyConfig::mix() const {
  return {random_dep_prob, sref_dep_prob, dref_dep_prob, traversed_dep_prob, class_dep_prob};
}

void DependencyConfig::validate() const {
  const auto m = mix();
  for (double p : m) {
    if (p < 0.0 || p > 1.0) throw ParameterError("dependency probabilities must lie in [0, 1]");
  }
  if (std::abs(std::accumulate(m.begin(), m.end(), 0.0) - 1.0) > 1e-9) {
    throw ParameterError("dependency mix must sum to 1");
  }
  if (!(c > 0.0) || c > 1.0) throw ParameterError("C must lie in (0, 1]");
  if (!(u > 0.0) || u > 1.0) throw ParameterError("U must lie in (0, 1]");
}

RandomFn uniform_random_fn(std::vector<Oid> oids) {
  if (oids.empty()) throw ParameterError("random function needs at least one object");
  auto pool = std::make_shared<const std::vector<Oid>>(std::move(oids));
  return [pool](Rng& rng) { return (*pool)[uniform_int<std::size_t>(rng, 0, pool->size() - 1)]; };
}

RandomFn hot_cold_random_fn(std::span<const Oid> oids, double hot_fraction, double hot_prob,
                            std::uint64_t seed) {
  if (oids.empty()) throw ParameterError("random function needs at least one object");
  if (!(hot_fraction > 0.0) || hot_fraction > 1.0) throw ParameterError("hot fraction must lie in (0, 1]");
  if (hot_prob < 0.0 || hot_prob > 1.0) throw ParameterError("hot probability must lie in [0, 1]");
  const std::vector<double> sizes{hot_fraction, 1.0 - hot_fraction};
  auto set = std::make_shared<HRegionSet>(partition(oids, sizes, AssignMethod::random, seed));
  set->regions[0].prob_w = hot_prob;
  set->regions[1].prob_w = 1.0 - hot_prob;
  if (set->regions[0].members.empty()) set->regions[1].prob_w = 1.0;
  if (set->regions[1].members.empty()) set->regions[0].prob_w = 1.0;
  return [set](Rng& rng) { return select_root(*set, rng); };
}

DRefTable generate_d_refs(const ocb::Database& db, std::size_t d, std::uint64_t seed) {
  DRefTable table(db.objects.size());
  const auto live = db.alive_oids();
  if (live.empty()) return table;
  Rng rng(derive_seed(seed, 21));
  for (Oid oid : live) {
    auto& row = table[oid];
    row.reserve(d);
    for (std::size_t k = 0; k < d; ++k) row.push_back(live[uniform_int<std::size_t>(rng, 0, live.size() - 1)]);
  }
  return table;
}

Oid dep_random(Rng& rng, const RandomFn& random_fn) { return random_fn(rng); }

std::vector<Oid> sref_candidates(const ocb::Database& db, Oid prev) {
  std::vector<Oid> out;
  if (!db.contains(prev)) return out;
  for (const auto& r : db.objects[prev].orefs) out.push_back(r.target);
  return out;
}

std::vector<Oid> dref_candidates(const DRefTable& d_refs, Oid prev) {
  if (prev >= d_refs.size()) return {};
  return d_refs[prev];
}

std::vector<Oid> traversed_candidates(const workload::AccessRecord& prev_trace, double c) {
  std::vector<Oid> distinct;
  std::unordered_set<Oid> seen;
  for (const auto& a : prev_trace.accessed) {
    if (seen.insert(a.oid).second) distinct.push_back(a.oid);
  }
  const auto keep = static_cast<std::size_t>(std::ceil(c * static_cast<double>(distinct.size()) - 1e-12));
  distinct.resize(std::min(distinct.size(), std::max<std::size_t>(keep, distinct.empty() ? 0 : 1)));
  return distinct;
}

std::vector<Oid> same_class_candidates(const ocb::Database& db, Oid prev, double u) {
  if (!db.contains(prev)) return {};
  const auto& iter = db.class_of(prev).iterator;
  if (iter.empty()) return {};
  const std::size_t n = iter.size();
  const auto len = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(u * static_cast<double>(n) - 1e-12)), 1, n);
  const std::size_t start = mix64(prev) % n;
  std::vector<Oid> out;
  out.reserve(len);
  for (std::size_t k = 0; k < len; ++k) out.push_back(iter[(start + k) % n]);
  return out;
}

std::optional<Oid> pick_uniform(std::span<const Oid> candidates, Rng& rng) {
  if (candidates.empty()) return std::nullopt;
  return candidates[uniform_int<std::size_t>(rng, 0, candidates.size() - 1)];
}

namespace {

Oid pick_or_fallback(std::span<const Oid> candidates, Rng& rng, const RandomFn& random_fn, bool* fell_back) {
  if (auto pick = pick_uniform(candidates, rng)) {
    if (fell_back) *fell_back = false;
    return *pick;
  }
  if (fell_back) *fell_back = true;
  return dep_random(rng, random_fn);
}

}  // namespace

Oid dep_by_reference(Oid prev, DepKind kind, const ocb::Database& db, const DRefTable& d_refs,
                     Rng& rng, const RandomFn& random_fn, bool* fell_back) {
  if (kind != DepKind::s_ref && kind != DepKind::d_ref) {
    throw ParameterError("dep_by_reference expects s_ref or d_ref");
  }
  const auto cands = kind == DepKind::s_ref ? sref_candidates(db, prev) : dref_candidates(d_refs, prev);
  return pick_or_fallback(cands, rng, random_fn, fell_back);
}

Oid dep_traversed(const workload::AccessRecord& prev_trace, double c, Rng& rng,
                  const RandomFn& random_fn, bool* fell_back) {
  return pick_or_fallback(traversed_candidates(prev_trace, c), rng, random_fn, fell_back);
}

Oid dep_same_class(Oid prev, double u, const ocb::Database& db, Rng& rng, const RandomFn& random_fn,
                   bool* fell_back) {
  return pick_or_fallback(same_class_candidates(db, prev, u), rng, random_fn, fell_back);
}

}  // namespace doef::def
