#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "doef/ocb/database.hpp"

namespace doef::def {

enum class Direction { up, down };
enum class AssignMethod { random, by_class };

std::string_view to_string(Direction d);
std::string_view to_string(AssignMethod m);
Direction parse_direction(std::string_view s);
AssignMethod parse_assign_method(std::string_view s);

/// A set of objects sharing one probability weight.
struct HRegion {
  double hr_size = 0.0;
  double prob_w = 0.0;
  double lowest_prob_w = 0.0;
  double highest_prob_w = 0.0;
  double prob_w_incr_size = 0.0;
  Direction direction = Direction::down;
  std::vector<Oid> members;

  friend bool operator==(const HRegion&, const HRegion&) = default;
};

struct HRegionSet {
  std::vector<HRegion> regions;
  AssignMethod assign_method = AssignMethod::random;

  friend bool operator==(const HRegionSet&, const HRegionSet&) = default;
};

using ClassLookup = std::function<ClassId(Oid)>;

/// Number of members each region receives: floor(size_k * n), last region takes the remainder.
std::vector<std::size_t> region_cardinalities(std::span<const double> sizes, std::size_t n);

/// Splits `oids` into regions of the given fractional sizes. `random` shuffles
/// with `seed` first; `by_class` stable-sorts by class ID (requires `class_of`).
HRegionSet partition(std::span<const Oid> oids, std::span<const double> sizes, AssignMethod method,
                     std::uint64_t seed, const ClassLookup& class_of = {});
HRegionSet partition(std::span<const Oid> oids, std::span<const double> sizes, AssignMethod method,
                     std::uint64_t seed, const ocb::Database& db);

/// Region chosen with probability prob_w / sum(prob_w) over non-empty regions.
std::size_t select_region(const HRegionSet& set, Rng& rng);

/// A uniform member of a region chosen by select_region.
Oid select_root(const HRegionSet& set, Rng& rng);

/// One increment in the region's direction, clamped to its bounds.
HRegion adjust_weight(HRegion region);
void adjust_weight_in_place(HRegion& region);

}  // namespace doef::def
