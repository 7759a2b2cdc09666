#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "doef/def/hregions.hpp"

namespace doef::def {

enum class RegionalKind { moving_window, gradual_moving_window, cycles };

std::string_view to_string(RegionalKind k);
RegionalKind parse_regional_kind(std::string_view s);

/// The H-region parameter bundle shared by all regions of a protocol.
struct HRegionParams {
  double hr_size = 0.003;                ///< HR-SIZE
  std::optional<double> init_prob_w;     ///< INIT-PROB-W; protocols set hot/cold themselves
  double lowest_prob_w = 0.0006;         ///< LOWEST-PROB-W
  double highest_prob_w = 0.80;          ///< HIGHEST-PROB-W
  double prob_w_incr_size = 0.02;        ///< PROB-W-INCR-SIZE (gradual protocol only)
  AssignMethod assign_method = AssignMethod::random;  ///< OBJECT-ASSIGN-METHOD
  Direction init_dir = Direction::down;  ///< INIT-DIR
};

struct RegionalConfig {
  RegionalKind protocol = RegionalKind::moving_window;
  double h_rate = 1.0;                   ///< H, the rate of change
  std::size_t n_regions = 0;             ///< N-REGIONS; 0 derives ceil(1 / HR-SIZE)
  double cycle_region_size = 0.1;        ///< CYCLE-REGION-SIZE
  HRegionParams regions;

  std::size_t resolved_regions() const;
  void validate() const;
};

/// Root selections between two change iterations: max(1, round(1 / h)).
std::size_t change_interval(double h_rate);

struct RegionalState {
  HRegionSet set;
  std::size_t window = 0;  ///< index of the region the window sits on

  friend bool operator==(const RegionalState&, const RegionalState&) = default;
};

/// Region sizes, weights and directions without members.
RegionalState moving_window_layout(const RegionalConfig& cfg);
RegionalState gradual_moving_window_layout(const RegionalConfig& cfg);
RegionalState cycles_layout(const RegionalConfig& cfg);

/// Fills region members from `oids` according to the region sizes.
void assign_members(RegionalState& state, std::span<const Oid> oids, AssignMethod method,
                    std::uint64_t seed, const ClassLookup& class_of = {});

RegionalState moving_window_init(const RegionalConfig& cfg, std::span<const Oid> oids,
                                 std::uint64_t seed, const ClassLookup& class_of = {});
RegionalState gradual_moving_window_init(const RegionalConfig& cfg, std::span<const Oid> oids,
                                         std::uint64_t seed, const ClassLookup& class_of = {});
RegionalState cycles_init(const RegionalConfig& cfg, std::span<const Oid> oids, std::uint64_t seed,
                          const ClassLookup& class_of = {});

void moving_window_step(RegionalState& state);
void gradual_moving_window_step(RegionalState& state);
void cycles_step(RegionalState& state);

/// Extension point for new styles of change.
class RegionalProtocol {
 public:
  virtual ~RegionalProtocol() = default;
  virtual std::string_view name() const = 0;
  virtual RegionalState layout(const RegionalConfig& cfg) const = 0;
  virtual void step(RegionalState& state) const = 0;
};

std::unique_ptr<RegionalProtocol> make_regional_protocol(RegionalKind kind);

/// Owns a regional state and its change clock. Every selection counts towards
/// the next change iteration.
class RegionalDriver {
 public:
  /// Layout only; members are supplied per selection (integration mode).
  explicit RegionalDriver(const RegionalConfig& cfg);
  /// Regions populated from `oids`.
  RegionalDriver(const RegionalConfig& cfg, std::span<const Oid> oids, std::uint64_t seed,
                 const ClassLookup& class_of = {});

  Oid select(Rng& rng);
  /// Counts one root selection; applies a change iteration when the interval elapses.
  void tick();

  const RegionalState& state() const { return state_; }
  std::size_t interval() const { return interval_; }
  std::size_t since_change() const { return since_change_; }
  std::size_t change_iterations() const { return changes_; }
  const RegionalConfig& config() const { return cfg_; }

 private:
  RegionalConfig cfg_;
  std::unique_ptr<RegionalProtocol> protocol_;
  RegionalState state_;
  std::size_t interval_ = 1;
  std::size_t since_change_ = 0;
  std::size_t changes_ = 0;
};

}  // namespace doef::def
