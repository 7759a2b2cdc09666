#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "doef/def/regional.hpp"

using namespace doef;
using namespace doef::def;

namespace {

RegionalConfig drift_params(RegionalKind kind, std::size_t n = 0) {
  RegionalConfig c;
  c.protocol = kind;
  c.n_regions = n;
  return c;
}

std::vector<double> weights(const RegionalState& s) {
  std::vector<double> w;
  for (const auto& r : s.set.regions) w.push_back(r.prob_w);
  return w;
}

void expect_clamped(const RegionalState& s) {
  for (const auto& r : s.set.regions) {
    ASSERT_GE(r.prob_w, r.lowest_prob_w);
    ASSERT_LE(r.prob_w, r.highest_prob_w);
  }
}

std::vector<Oid> iota_oids(std::size_t n) {
  std::vector<Oid> v(n);
  std::iota(v.begin(), v.end(), Oid{0});
  return v;
}

}  // namespace

TEST(ChangeInterval, Values) {
  EXPECT_EQ(change_interval(1.0), 1u);
  EXPECT_EQ(change_interval(0.0006), 1667u);
  EXPECT_EQ(change_interval(0.5), 2u);
  EXPECT_EQ(change_interval(std::ldexp(1.0, -11)), 2048u);
  EXPECT_THROW(change_interval(0.0), ParameterError);
  EXPECT_THROW(change_interval(1.5), ParameterError);
  EXPECT_THROW(change_interval(-0.1), ParameterError);
}

TEST(MovingWindow, DefaultsLayout) {
  const auto s = moving_window_layout(drift_params(RegionalKind::moving_window));
  ASSERT_EQ(s.set.regions.size(), 334u);
  EXPECT_DOUBLE_EQ(s.set.regions[0].prob_w, 0.80);
  for (std::size_t k = 1; k < 334; ++k) EXPECT_DOUBLE_EQ(s.set.regions[k].prob_w, 0.0006);
  for (const auto& r : s.set.regions) {
    EXPECT_EQ(r.direction, Direction::down);
    EXPECT_NEAR(r.prob_w_incr_size, 0.7994, 1e-12);
  }
  EXPECT_EQ(s.window, 0u);
}

TEST(MovingWindow, MembersPerRegion) {
  const auto oids = iota_oids(100'000);
  const auto s = moving_window_init(drift_params(RegionalKind::moving_window), oids, 1);
  for (std::size_t k = 0; k + 1 < s.set.regions.size(); ++k) EXPECT_EQ(s.set.regions[k].members.size(), 299u);
  std::size_t total = 0;
  for (const auto& r : s.set.regions) total += r.members.size();
  EXPECT_EQ(total, oids.size());
}

TEST(MovingWindow, SingleStepSwap) {
  auto s = moving_window_layout(drift_params(RegionalKind::moving_window, 2));
  moving_window_step(s);
  EXPECT_NEAR(s.set.regions[1].prob_w, 0.8, 1e-12);
  EXPECT_NEAR(s.set.regions[0].prob_w, 0.0006, 1e-12);
  EXPECT_EQ(s.window, 1u);
}

TEST(MovingWindow, SingleRegionIsIdentity) {
  auto s = moving_window_layout(drift_params(RegionalKind::moving_window, 1));
  const auto before = s;
  for (int i = 0; i < 5; ++i) moving_window_step(s);
  EXPECT_EQ(s, before);
  EXPECT_DOUBLE_EQ(s.set.regions[0].prob_w, 0.8);
}

TEST(MovingWindow, PeriodN) {
  for (std::size_t n : {2u, 3u, 7u, 334u}) {
    const auto init = moving_window_layout(drift_params(RegionalKind::moving_window, n));
    auto s = init;
    moving_window_step(s);
    const auto after_one = s;
    for (std::size_t i = 1; i < n; ++i) {
      moving_window_step(s);
      expect_clamped(s);
      // Exactly one region is hot at every step.
      std::size_t hot = 0;
      for (double w : weights(s)) hot += std::abs(w - 0.8) < 1e-9;
      EXPECT_EQ(hot, 1u);
      EXPECT_NEAR(s.set.regions[s.window].prob_w, 0.8, 1e-9);
    }
    EXPECT_EQ(s.window, init.window);
    const auto w0 = weights(init), wn = weights(s);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(wn[k], w0[k], 1e-12);
    moving_window_step(s);
    EXPECT_EQ(s, after_one);
  }
}

TEST(Gradual, OneStepAndFullHeat) {
  auto s = gradual_moving_window_layout(drift_params(RegionalKind::gradual_moving_window));
  for (const auto& r : s.set.regions) EXPECT_DOUBLE_EQ(r.prob_w_incr_size, 0.02);
  gradual_moving_window_step(s);
  EXPECT_NEAR(s.set.regions[1].prob_w, 0.0206, 1e-12);
  EXPECT_NEAR(s.set.regions[0].prob_w, 0.78, 1e-12);
  int steps = 1;
  while (s.set.regions[1].prob_w < 0.8 - 1e-12) {
    gradual_moving_window_step(s);
    ++steps;
  }
  EXPECT_EQ(steps, static_cast<int>(std::ceil((0.8 - 0.0006) / 0.02)));
  EXPECT_EQ(steps, 40);
  // Fully hot and not under the window: stays clamped.
  gradual_moving_window_step(s);
  EXPECT_EQ(s.set.regions[1].direction, Direction::up);
  EXPECT_DOUBLE_EQ(s.set.regions[1].prob_w, 0.8);
}

TEST(Gradual, DeltaIsZeroOrIncrement) {
  auto s = gradual_moving_window_layout(drift_params(RegionalKind::gradual_moving_window, 30));
  for (int step = 0; step < 500; ++step) {
    const auto before = weights(s);
    gradual_moving_window_step(s);
    expect_clamped(s);
    const auto after = weights(s);
    for (std::size_t k = 0; k < after.size(); ++k) {
      const double d = std::abs(after[k] - before[k]);
      // A step that reaches a bound is clamped; all unclamped moves are a full increment.
      const bool at_bound = std::abs(after[k] - 0.8) < 1e-12 || std::abs(after[k] - 0.0006) < 1e-12;
      if (!at_bound) EXPECT_NEAR(d, 0.02, 1e-9);
      EXPECT_LE(d, 0.02 + 1e-9);
    }
  }
}

TEST(Gradual, IncomingRegionToggledOnly) {
  auto s = gradual_moving_window_layout(drift_params(RegionalKind::gradual_moving_window, 5));
  const auto before = s;
  gradual_moving_window_step(s);
  EXPECT_EQ(s.set.regions[1].direction, Direction::up);
  for (std::size_t k : {0u, 2u, 3u, 4u}) EXPECT_EQ(s.set.regions[k].direction, before.set.regions[k].direction);
  EXPECT_EQ(s.window, 1u);
}

TEST(Cycles, PeriodTwoAndConstantThird) {
  auto cfg = drift_params(RegionalKind::cycles);
  cfg.regions.init_prob_w = 0.1;
  const auto init = cycles_layout(cfg);
  ASSERT_EQ(init.set.regions.size(), 3u);
  EXPECT_DOUBLE_EQ(init.set.regions[0].hr_size, 0.1);
  EXPECT_DOUBLE_EQ(init.set.regions[1].hr_size, 0.1);
  EXPECT_NEAR(init.set.regions[2].hr_size, 0.8, 1e-12);
  EXPECT_DOUBLE_EQ(init.set.regions[2].prob_w_incr_size, 0.0);
  auto s = init;
  cycles_step(s);
  EXPECT_NEAR(s.set.regions[0].prob_w, 0.0006, 1e-12);
  EXPECT_NEAR(s.set.regions[1].prob_w, 0.8, 1e-12);
  EXPECT_DOUBLE_EQ(s.set.regions[2].prob_w, 0.1);
  EXPECT_EQ(s.window, 1u);
  cycles_step(s);
  EXPECT_EQ(s, init);
  for (int i = 0; i < 1000; ++i) {
    cycles_step(s);
    EXPECT_DOUBLE_EQ(s.set.regions[2].prob_w, 0.1);
    expect_clamped(s);
  }
  EXPECT_EQ(s, init);
}

TEST(Cycles, HalfSizeLeavesThirdEmpty) {
  auto cfg = drift_params(RegionalKind::cycles);
  cfg.cycle_region_size = 0.5;
  const auto oids = iota_oids(100);
  const auto s = cycles_init(cfg, oids, 1);
  EXPECT_EQ(s.set.regions[2].members.size(), 0u);
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(select_region(s.set, rng), 2u);
  cfg.cycle_region_size = 0.6;
  EXPECT_THROW(cycles_layout(cfg), ParameterError);
}

TEST(Driver, ClockTicksEveryInterval) {
  auto cfg = drift_params(RegionalKind::moving_window, 10);
  cfg.h_rate = 0.25;
  const auto oids = iota_oids(1000);
  RegionalDriver d(cfg, oids, 3);
  EXPECT_EQ(d.interval(), 4u);
  Rng rng(1);
  for (int i = 0; i < 40; ++i) {
    const std::size_t expected_window = static_cast<std::size_t>(i / 4) % 10;
    EXPECT_EQ(d.state().window, expected_window);
    const Oid root = d.select(rng);
    EXPECT_LT(root, 1000u);
  }
  EXPECT_EQ(d.change_iterations(), 10u);
  EXPECT_EQ(d.since_change(), 0u);
}

TEST(Driver, HotRateDefaults) {
  auto cfg = drift_params(RegionalKind::moving_window);
  cfg.h_rate = 1.0;
  const auto oids = iota_oids(100'000);
  RegionalDriver d(cfg, oids, 1);
  Rng rng(2);
  int hot = 0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    const auto& hot_members = d.state().set.regions[d.state().window].members;
    const Oid root = d.select(rng);
    hot += std::find(hot_members.begin(), hot_members.end(), root) != hot_members.end();
  }
  EXPECT_NEAR(hot / double(n), 0.8 / (0.8 + 333 * 0.0006), 0.01);
}

TEST(Driver, DeterministicSelections) {
  auto cfg = drift_params(RegionalKind::gradual_moving_window, 20);
  cfg.h_rate = 0.1;
  const auto oids = iota_oids(2000);
  RegionalDriver a(cfg, oids, 9), b(cfg, oids, 9);
  Rng ra(4), rb(4);
  for (int i = 0; i < 500; ++i) EXPECT_EQ(a.select(ra), b.select(rb));
  EXPECT_EQ(a.state(), b.state());
}

TEST(Protocols, PluginNamesAndParse) {
  for (auto k : {RegionalKind::moving_window, RegionalKind::gradual_moving_window, RegionalKind::cycles}) {
    EXPECT_EQ(make_regional_protocol(k)->name(), to_string(k));
    EXPECT_EQ(parse_regional_kind(to_string(k)), k);
  }
  EXPECT_EQ(parse_regional_kind("gradual"), RegionalKind::gradual_moving_window);
  EXPECT_THROW(parse_regional_kind("spiral"), ParameterError);
}

TEST(Protocols, ClampInvariantAllProtocols) {
  for (auto k : {RegionalKind::moving_window, RegionalKind::gradual_moving_window, RegionalKind::cycles}) {
    auto cfg = drift_params(k, 17);
    auto proto = make_regional_protocol(k);
    auto s = proto->layout(cfg);
    for (int i = 0; i < 300; ++i) {
      proto->step(s);
      expect_clamped(s);
    }
  }
}
