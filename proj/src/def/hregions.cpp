#include "doef/def/hregions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace doef::def {

std::string_view to_string(Direction d) { return d == Direction::up ? "up" : "down"; }
std::string_view to_string(AssignMethod m) { return m == AssignMethod::random ? "random" : "by_class"; }

Direction parse_direction(std::string_view s) {
  if (s == "up") return Direction::up;
  if (s == "down") return Direction::down;
  throw ParameterError("INIT-DIR must be up or down, got '" + std::string(s) + "'");
}

AssignMethod parse_assign_method(std::string_view s) {
  if (s == "random") return AssignMethod::random;
  if (s == "by_class" || s == "class") return AssignMethod::by_class;
  throw ParameterError("OBJECT-ASSIGN-METHOD must be random or by_class, got '" + std::string(s) + "'");
}

std::vector<std::size_t> region_cardinalities(std::span<const double> sizes, std::size_t n) {
  if (sizes.empty()) throw ParameterError("at least one region size is required");
  double sum = 0.0;
  for (double s : sizes) {
    if (!(s >= 0.0) || s > 1.0) throw ParameterError("HR-SIZE values must lie in [0, 1]");
    sum += s;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ParameterError("HR-SIZE values must sum to 1");

  std::vector<std::size_t> counts(sizes.size());
  std::size_t assigned = 0;
  for (std::size_t k = 0; k + 1 < sizes.size(); ++k) {
    // The small epsilon keeps exact products such as 0.5 * 10 from flooring down.
    counts[k] = std::min(n - assigned, static_cast<std::size_t>(std::floor(sizes[k] * n + 1e-9)));
    assigned += counts[k];
  }
  counts.back() = n - assigned;
  return counts;
}

HRegionSet partition(std::span<const Oid> oids, std::span<const double> sizes, AssignMethod method,
                     std::uint64_t seed, const ClassLookup& class_of) {
  if (oids.empty()) throw ParameterError("cannot partition an empty object set");
  const auto counts = region_cardinalities(sizes, oids.size());

  std::vector<Oid> order(oids.begin(), oids.end());
  if (method == AssignMethod::random) {
    Rng rng(derive_seed(seed, 11));
    std::shuffle(order.begin(), order.end(), rng);
  } else {
    if (!class_of) throw ParameterError("by_class assignment needs a class lookup");
    std::stable_sort(order.begin(), order.end(),
                     [&](Oid a, Oid b) { return class_of(a) < class_of(b); });
  }

  HRegionSet set;
  set.assign_method = method;
  set.regions.resize(sizes.size());
  auto next = order.begin();
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    set.regions[k].hr_size = sizes[k];
    set.regions[k].members.assign(next, next + static_cast<std::ptrdiff_t>(counts[k]));
    next += static_cast<std::ptrdiff_t>(counts[k]);
  }
  return set;
}

HRegionSet partition(std::span<const Oid> oids, std::span<const double> sizes, AssignMethod method,
                     std::uint64_t seed, const ocb::Database& db) {
  return partition(oids, sizes, method, seed, [&db](Oid o) { return db.objects.at(o).class_id; });
}

std::size_t select_region(const HRegionSet& set, Rng& rng) {
  double total = 0.0;
  for (const auto& r : set.regions) {
    if (!r.members.empty()) total += r.prob_w;
  }
  if (!(total > 0.0)) throw DegenerateWeightsError("all non-empty H-regions have zero weight");

  const double x = uniform_real(rng) * total;
  double acc = 0.0;
  std::size_t last_candidate = 0;
  for (std::size_t k = 0; k < set.regions.size(); ++k) {
    const auto& r = set.regions[k];
    if (r.members.empty() || r.prob_w <= 0.0) continue;
    acc += r.prob_w;
    last_candidate = k;
    if (x < acc) return k;
  }
  return last_candidate;  // rounding at the top end
}

Oid select_root(const HRegionSet& set, Rng& rng) {
  const auto& members = set.regions[select_region(set, rng)].members;
  return members[uniform_int<std::size_t>(rng, 0, members.size() - 1)];
}

void adjust_weight_in_place(HRegion& region) {
  const double delta = region.direction == Direction::up ? region.prob_w_incr_size : -region.prob_w_incr_size;
  double w = std::clamp(region.prob_w + delta, region.lowest_prob_w, region.highest_prob_w);
  // Snap rounding residue onto the bounds so swings between them repeat exactly.
  constexpr double kSnap = 1e-12;
  if (w - region.lowest_prob_w < kSnap) w = region.lowest_prob_w;
  if (region.highest_prob_w - w < kSnap) w = region.highest_prob_w;
  region.prob_w = w;
}

HRegion adjust_weight(HRegion region) {
  adjust_weight_in_place(region);
  return region;
}

}  // namespace doef::def
