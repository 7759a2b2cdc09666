#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "doef/ocb/database.hpp"
#include "doef/workload/workload.hpp"

namespace doef::def {

enum class DepKind { random, s_ref, d_ref, traversed, same_class };

std::string_view to_string(DepKind k);

struct DependencyConfig {
  double random_dep_prob = 1.0;     ///< RANDOM-DEP-PROB
  double sref_dep_prob = 0.0;       ///< SREF-DEP-PROB
  double dref_dep_prob = 0.0;       ///< DREF-DEP-PROB
  double traversed_dep_prob = 0.0;  ///< TRAVERSED-DEP-PROB
  double class_dep_prob = 0.0;      ///< CLASS-DEP-PROB
  std::size_t d = 1;                ///< D-references per object
  double c = 1.0;                   ///< traversed-set fraction
  double u = 1.0;                   ///< class-subset fraction
  std::size_t r = 0;                ///< dependency-phase length

  std::vector<double> mix() const;  ///< in DepKind order
  void validate() const;
};

/// Draws the root used by the random protocol (and by every fallback).
using RandomFn = std::function<Oid(Rng&)>;

RandomFn uniform_random_fn(std::vector<Oid> oids);

/// `hot_fraction` of the objects (picked with `seed`) receive `hot_prob` of the draws.
RandomFn hot_cold_random_fn(std::span<const Oid> oids, double hot_fraction, double hot_prob,
                            std::uint64_t seed);

/// D-reference targets, indexed by OID.
using DRefTable = std::vector<std::vector<Oid>>;

/// D uniform targets per object over the whole OID space.
DRefTable generate_d_refs(const ocb::Database& db, std::size_t d, std::uint64_t seed);

Oid dep_random(Rng& rng, const RandomFn& random_fn);

/// Candidate sets. Empty when `prev` is unknown or has nothing to offer.
std::vector<Oid> sref_candidates(const ocb::Database& db, Oid prev);
std::vector<Oid> dref_candidates(const DRefTable& d_refs, Oid prev);
/// First ceil(c * n) distinct objects of the trace, in visit order.
std::vector<Oid> traversed_candidates(const workload::AccessRecord& prev_trace, double c);
/// A block of ceil(u * class size) consecutive class-iterator entries starting at
/// hash(prev) mod class size, wrapping.
std::vector<Oid> same_class_candidates(const ocb::Database& db, Oid prev, double u);

std::optional<Oid> pick_uniform(std::span<const Oid> candidates, Rng& rng);

/// Reference-based dependency with fallback to `random_fn` on an empty candidate set.
/// `fell_back` is set when the fallback fired.
Oid dep_by_reference(Oid prev, DepKind kind, const ocb::Database& db, const DRefTable& d_refs,
                     Rng& rng, const RandomFn& random_fn, bool* fell_back = nullptr);
Oid dep_traversed(const workload::AccessRecord& prev_trace, double c, Rng& rng,
                  const RandomFn& random_fn, bool* fell_back = nullptr);
Oid dep_same_class(Oid prev, double u, const ocb::Database& db, Rng& rng, const RandomFn& random_fn,
                   bool* fell_back = nullptr);

}  // namespace doef::def
