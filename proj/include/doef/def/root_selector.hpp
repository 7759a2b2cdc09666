#pragma once

#include <array>
#include <memory>
#include <optional>

#include "doef/def/dependency.hpp"
#include "doef/def/regional.hpp"

namespace doef::def {

enum class SelectorMode { regional, hybrid, integrated };

std::string_view to_string(SelectorMode m);
SelectorMode parse_selector_mode(std::string_view s);

enum class HybridPhase { randomize, dependency };

struct SelectorConfig {
  SelectorMode mode = SelectorMode::regional;
  RegionalConfig regional;
  DependencyConfig dependency;
  /// The random function: `random_hot_fraction` of the objects receive
  /// `random_hot_prob` of the draws. A fraction of 1 gives a uniform draw.
  double random_hot_fraction = 0.03;
  double random_hot_prob = 0.80;
};

/// Maps each candidate (in the given order) to a region by position:
/// candidate j lands in the region whose cumulative size interval contains (j + 0.5) / m.
std::vector<std::size_t> map_candidates_to_regions(std::size_t m, const HRegionSet& layout);

/// Produces the root sequence for one experiment.
class RootSelector {
 public:
  /// `op_kind` is the workload operation; integration over traversed sets needs a
  /// deterministic traversal.
  RootSelector(const ocb::Database& db, const SelectorConfig& cfg, std::uint64_t seed,
               workload::OpKind op_kind = workload::OpKind::simple_traversal);

  Oid next(Rng& rng);
  /// Feeds the transaction run from the last root back (for traversed dependencies).
  void observe(const workload::AccessRecord& record);

  HybridPhase phase() const { return phase_; }
  std::size_t remaining() const { return remaining_; }
  std::optional<Oid> prev_root() const { return prev_root_; }
  std::optional<DepKind> last_kind() const { return last_kind_; }
  std::size_t fallbacks() const { return fallbacks_; }
  std::size_t selections() const { return selections_; }
  const std::array<std::size_t, 5>& kind_counts() const { return kind_counts_; }
  const RegionalDriver* regional() const { return regional_.get(); }
  const DRefTable& d_refs() const { return d_refs_; }
  const SelectorConfig& config() const { return cfg_; }

 private:
  Oid next_hybrid(Rng& rng);
  std::vector<Oid> candidates(DepKind kind) const;
  Oid integrated_pick(std::vector<Oid> cands, Rng& rng);

  const ocb::Database* db_;
  SelectorConfig cfg_;
  std::uint64_t seed_;
  RandomFn random_fn_;
  DRefTable d_refs_;
  std::unique_ptr<RegionalDriver> regional_;
  std::vector<double> mix_;
  HybridPhase phase_ = HybridPhase::randomize;
  std::size_t remaining_ = 0;
  std::optional<Oid> prev_root_;
  std::optional<workload::AccessRecord> prev_trace_;
  std::optional<DepKind> last_kind_;
  std::size_t fallbacks_ = 0;
  std::size_t selections_ = 0;
  std::array<std::size_t, 5> kind_counts_{};
};

}  // namespace doef::def
