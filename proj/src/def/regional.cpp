#include "doef/def/regional.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace doef::def {
namespace {

HRegion make_region(double size, double weight, double lo, double hi, double incr, Direction dir) {
  HRegion r;
  r.hr_size = size;
  r.prob_w = weight;
  r.lowest_prob_w = lo;
  r.highest_prob_w = hi;
  r.prob_w_incr_size = incr;
  r.direction = dir;
  return r;
}

RegionalState window_layout(const RegionalConfig& cfg, double incr) {
  cfg.validate();
  const auto n = cfg.resolved_regions();
  const auto& p = cfg.regions;
  RegionalState s;
  s.set.assign_method = p.assign_method;
  for (std::size_t k = 0; k < n; ++k) {
    s.set.regions.push_back(make_region(1.0 / static_cast<double>(n),
                                        k == 0 ? p.highest_prob_w : p.lowest_prob_w, p.lowest_prob_w,
                                        p.highest_prob_w, incr, Direction::down));
  }
  s.window = 0;
  return s;
}

Direction toggled(Direction d) { return d == Direction::up ? Direction::down : Direction::up; }

class MovingWindow final : public RegionalProtocol {
 public:
  std::string_view name() const override { return "moving_window"; }
  RegionalState layout(const RegionalConfig& cfg) const override { return moving_window_layout(cfg); }
  void step(RegionalState& s) const override { moving_window_step(s); }
};

class GradualMovingWindow final : public RegionalProtocol {
 public:
  std::string_view name() const override { return "gradual_moving_window"; }
  RegionalState layout(const RegionalConfig& cfg) const override { return gradual_moving_window_layout(cfg); }
  void step(RegionalState& s) const override { gradual_moving_window_step(s); }
};

class Cycles final : public RegionalProtocol {
 public:
  std::string_view name() const override { return "cycles"; }
  RegionalState layout(const RegionalConfig& cfg) const override { return cycles_layout(cfg); }
  void step(RegionalState& s) const override { cycles_step(s); }
};

}  // namespace

std::string_view to_string(RegionalKind k) {
  switch (k) {
    case RegionalKind::moving_window: return "moving_window";
    case RegionalKind::gradual_moving_window: return "gradual_moving_window";
    case RegionalKind::cycles: return "cycles";
  }
  return "?";
}

RegionalKind parse_regional_kind(std::string_view s) {
  if (s == "moving_window" || s == "moving") return RegionalKind::moving_window;
  if (s == "gradual_moving_window" || s == "gradual") return RegionalKind::gradual_moving_window;
  if (s == "cycles") return RegionalKind::cycles;
  throw ParameterError("unknown regional protocol '" + std::string(s) + "'");
}

std::size_t RegionalConfig::resolved_regions() const {
  if (n_regions > 0) return n_regions;
  return static_cast<std::size_t>(std::ceil(1.0 / regions.hr_size - 1e-9));
}

void RegionalConfig::validate() const {
  if (!(h_rate > 0.0) || h_rate > 1.0) throw ParameterError("H must lie in (0, 1]");
  const auto& p = regions;
  if (n_regions == 0 && (!(p.hr_size > 0.0) || p.hr_size > 1.0)) throw ParameterError("HR-SIZE must lie in (0, 1]");
  if (p.lowest_prob_w < 0.0 || p.lowest_prob_w > p.highest_prob_w) {
    throw ParameterError("need 0 <= LOWEST-PROB-W <= HIGHEST-PROB-W");
  }
  if (p.prob_w_incr_size < 0.0) throw ParameterError("PROB-W-INCR-SIZE must be >= 0");
  if (protocol == RegionalKind::cycles && (!(cycle_region_size > 0.0) || cycle_region_size > 0.5)) {
    throw ParameterError("CYCLE-REGION-SIZE must lie in (0, 0.5]");
  }
}

std::size_t change_interval(double h_rate) {
  if (!(h_rate > 0.0) || h_rate > 1.0) throw ParameterError("H must lie in (0, 1]");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / h_rate)));
}

RegionalState moving_window_layout(const RegionalConfig& cfg) {
  return window_layout(cfg, cfg.regions.highest_prob_w - cfg.regions.lowest_prob_w);
}

RegionalState gradual_moving_window_layout(const RegionalConfig& cfg) {
  return window_layout(cfg, cfg.regions.prob_w_incr_size);
}

RegionalState cycles_layout(const RegionalConfig& cfg) {
  cfg.validate();
  const auto& p = cfg.regions;
  const double s = cfg.cycle_region_size;
  const double swing = p.highest_prob_w - p.lowest_prob_w;
  const double rest = p.init_prob_w.value_or(p.lowest_prob_w);
  RegionalState st;
  st.set.assign_method = p.assign_method;
  st.set.regions.push_back(make_region(s, p.highest_prob_w, p.lowest_prob_w, p.highest_prob_w, swing, Direction::down));
  st.set.regions.push_back(make_region(s, p.lowest_prob_w, p.lowest_prob_w, p.highest_prob_w, swing, Direction::up));
  st.set.regions.push_back(make_region(std::max(0.0, 1.0 - 2.0 * s), rest, rest, rest, 0.0, p.init_dir));
  st.window = 0;
  return st;
}

void assign_members(RegionalState& state, std::span<const Oid> oids, AssignMethod method,
                    std::uint64_t seed, const ClassLookup& class_of) {
  std::vector<double> sizes;
  for (const auto& r : state.set.regions) sizes.push_back(r.hr_size);
  auto parts = partition(oids, sizes, method, seed, class_of);
  for (std::size_t k = 0; k < sizes.size(); ++k) state.set.regions[k].members = std::move(parts.regions[k].members);
  state.set.assign_method = method;
}

RegionalState moving_window_init(const RegionalConfig& cfg, std::span<const Oid> oids,
                                 std::uint64_t seed, const ClassLookup& class_of) {
  auto s = moving_window_layout(cfg);
  assign_members(s, oids, cfg.regions.assign_method, seed, class_of);
  return s;
}

RegionalState gradual_moving_window_init(const RegionalConfig& cfg, std::span<const Oid> oids,
                                         std::uint64_t seed, const ClassLookup& class_of) {
  auto s = gradual_moving_window_layout(cfg);
  assign_members(s, oids, cfg.regions.assign_method, seed, class_of);
  return s;
}

RegionalState cycles_init(const RegionalConfig& cfg, std::span<const Oid> oids, std::uint64_t seed,
                          const ClassLookup& class_of) {
  auto s = cycles_layout(cfg);
  assign_members(s, oids, cfg.regions.assign_method, seed, class_of);
  return s;
}

void moving_window_step(RegionalState& state) {
  auto& regions = state.set.regions;
  if (regions.size() < 2) return;
  const std::size_t from = state.window;
  const std::size_t into = (from + 1) % regions.size();
  regions[from].direction = Direction::down;
  regions[into].direction = Direction::up;
  for (auto& r : regions) adjust_weight_in_place(r);
  state.window = into;
}

void gradual_moving_window_step(RegionalState& state) {
  auto& regions = state.set.regions;
  if (regions.size() < 2) return;
  const std::size_t into = (state.window + 1) % regions.size();
  regions[into].direction = toggled(regions[into].direction);
  // Regions already at the bound they are moving towards stay put through the clamp.
  for (auto& r : regions) adjust_weight_in_place(r);
  state.window = into;
}

void cycles_step(RegionalState& state) {
  auto& regions = state.set.regions;
  for (auto& r : regions) adjust_weight_in_place(r);
  for (std::size_t k = 0; k < 2 && k < regions.size(); ++k) regions[k].direction = toggled(regions[k].direction);
  state.window = regions[0].prob_w >= regions[1].prob_w ? 0 : 1;
}

std::unique_ptr<RegionalProtocol> make_regional_protocol(RegionalKind kind) {
  switch (kind) {
    case RegionalKind::moving_window: return std::make_unique<MovingWindow>();
    case RegionalKind::gradual_moving_window: return std::make_unique<GradualMovingWindow>();
    case RegionalKind::cycles: return std::make_unique<Cycles>();
  }
  throw ParameterError("unknown regional protocol");
}

RegionalDriver::RegionalDriver(const RegionalConfig& cfg)
    : cfg_(cfg),
      protocol_(make_regional_protocol(cfg.protocol)),
      state_(protocol_->layout(cfg)),
      interval_(change_interval(cfg.h_rate)) {}

RegionalDriver::RegionalDriver(const RegionalConfig& cfg, std::span<const Oid> oids, std::uint64_t seed,
                               const ClassLookup& class_of)
    : RegionalDriver(cfg) {
  assign_members(state_, oids, cfg.regions.assign_method, seed, class_of);
}

Oid RegionalDriver::select(Rng& rng) {
  const Oid root = select_root(state_.set, rng);
  tick();
  return root;
}

void RegionalDriver::tick() {
  if (++since_change_ >= interval_) {
    since_change_ = 0;
    protocol_->step(state_);
    ++changes_;
  }
}

}  // namespace doef::def
