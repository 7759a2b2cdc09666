#include <gtest/gtest.h>

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <map>
#include <numeric>
#include <set>

#include "doef/def/root_selector.hpp"

using namespace doef;
using namespace doef::def;

namespace {

// Hand-built database: object 0 references 5, 6, 7; objects 1..9 have no refs.
ocb::Database tiny_db() {
  ocb::Database db;
  db.params.nc = 2;
  db.params.no = 10;
  db.classes.resize(2);
  db.classes[0].class_id = 0;
  db.classes[1].class_id = 1;
  db.objects.resize(10);
  for (Oid o = 0; o < 10; ++o) {
    db.objects[o].oid = o;
    db.objects[o].class_id = o % 2;
    db.classes[o % 2].iterator.push_back(o);
  }
  for (Oid t : {5u, 6u, 7u}) {
    db.objects[0].orefs.push_back({t, 2});
    db.objects[t].backrefs.push_back({0, 2});
  }
  return db;
}

const ocb::Database& gen_db() {
  static const ocb::Database db = [] {
    ocb::SchemaParams p;
    p.nc = 20;
    p.no = 5000;
    return ocb::generate_database(p, 7);
  }();
  return db;
}

double chi_square_p(const std::vector<double>& observed, double expected_each) {
  double stat = 0;
  for (double o : observed) stat += (o - expected_each) * (o - expected_each) / expected_each;
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

workload::AccessRecord record_of(std::vector<Oid> oids) {
  workload::AccessRecord rec;
  rec.root_oid = oids.front();
  for (Oid o : oids) rec.accessed.push_back({o, workload::AccessMode::read});
  return rec;
}

}  // namespace

TEST(DepConfig, Validation) {
  DependencyConfig c;
  EXPECT_NO_THROW(c.validate());
  c.sref_dep_prob = 0.5;
  EXPECT_THROW(c.validate(), ParameterError);
  c.random_dep_prob = 0.5;
  EXPECT_NO_THROW(c.validate());
  c.c = 0.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c.c = 1.0;
  c.u = 1.5;
  EXPECT_THROW(c.validate(), ParameterError);
  EXPECT_EQ(DependencyConfig{}.mix(), (std::vector<double>{1, 0, 0, 0, 0}));
}

TEST(DepRandom, UniformFunction) {
  std::vector<Oid> oids(10);
  std::iota(oids.begin(), oids.end(), Oid{1});
  const auto fn = uniform_random_fn(oids);
  Rng rng(1);
  std::vector<double> counts(10, 0.0);
  for (int i = 0; i < 100'000; ++i) {
    const Oid o = dep_random(rng, fn);
    ASSERT_GE(o, 1u);
    ASSERT_LE(o, 10u);
    counts[o - 1] += 1;
  }
  EXPECT_GT(chi_square_p(counts, 10'000), 0.01);
}

TEST(DepRandom, HotColdSkew) {
  std::vector<Oid> oids(100'000);
  std::iota(oids.begin(), oids.end(), Oid{0});
  const auto fn = hot_cold_random_fn(oids, 0.03, 0.80, 5);
  // The hot set is the first region of the same seeded partition.
  const std::vector<double> sizes{0.03, 0.97};
  const auto set = partition(oids, sizes, AssignMethod::random, 5);
  const std::set<Oid> hot(set.regions[0].members.begin(), set.regions[0].members.end());
  EXPECT_EQ(hot.size(), 3000u);
  Rng rng(2);
  int h = 0;
  for (int i = 0; i < 100'000; ++i) h += hot.count(fn(rng)) != 0;
  EXPECT_NEAR(h / 100'000.0, 0.80, 0.01);
}

TEST(DepRandom, SingleObject) {
  const std::vector<Oid> one{42};
  Rng rng(1);
  EXPECT_EQ(hot_cold_random_fn(one, 0.03, 0.8, 1)(rng), 42u);
  EXPECT_EQ(uniform_random_fn(one)(rng), 42u);
}

TEST(DepByReference, SrefUniformOverRefs) {
  const auto db = tiny_db();
  const DRefTable none;
  const auto fallback = uniform_random_fn({1});
  Rng rng(3);
  std::vector<double> counts(3, 0.0);
  for (int i = 0; i < 30'000; ++i) {
    bool fb = true;
    const Oid o = dep_by_reference(0, DepKind::s_ref, db, none, rng, fallback, &fb);
    EXPECT_FALSE(fb);
    ASSERT_TRUE(o >= 5 && o <= 7);
    counts[o - 5] += 1;
  }
  EXPECT_GT(chi_square_p(counts, 10'000), 0.01);
}

TEST(DepByReference, FallbackWhenNoRefs) {
  const auto db = tiny_db();
  const auto fallback = uniform_random_fn({9});
  Rng rng(1);
  bool fb = false;
  EXPECT_EQ(dep_by_reference(3, DepKind::s_ref, db, {}, rng, fallback, &fb), 9u);
  EXPECT_TRUE(fb);
  EXPECT_THROW(dep_by_reference(3, DepKind::traversed, db, {}, rng, fallback), ParameterError);
}

TEST(DepByReference, DrefSingleTarget) {
  const auto& db = gen_db();
  const auto table = generate_d_refs(db, 1, 4);
  ASSERT_EQ(table.size(), db.objects.size());
  const auto fallback = uniform_random_fn({0});
  Rng rng(1);
  for (Oid o = 0; o < 200; ++o) {
    ASSERT_EQ(table[o].size(), 1u);
    for (int i = 0; i < 5; ++i) EXPECT_EQ(dep_by_reference(o, DepKind::d_ref, db, table, rng, fallback), table[o][0]);
  }
  EXPECT_EQ(generate_d_refs(db, 3, 4), generate_d_refs(db, 3, 4));
  for (const auto& row : generate_d_refs(db, 3, 4)) EXPECT_EQ(row.size(), 3u);
}

TEST(DepTraversed, PrefixRule) {
  const auto rec = record_of({10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20});
  EXPECT_EQ(traversed_candidates(rec, 1.0).size(), 11u);
  const auto ten = record_of({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  EXPECT_EQ(traversed_candidates(ten, 0.5), (std::vector<Oid>{1, 2, 3, 4, 5}));
  EXPECT_EQ(traversed_candidates(ten, 1e-9), (std::vector<Oid>{1}));
  // Duplicate accesses count once.
  EXPECT_EQ(traversed_candidates(record_of({4, 4, 5, 4, 6}), 1.0), (std::vector<Oid>{4, 5, 6}));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_LE(dep_traversed(ten, 0.5, rng, uniform_random_fn({99})), 5u);
  workload::AccessRecord empty;
  bool fb = false;
  EXPECT_EQ(dep_traversed(empty, 0.5, rng, uniform_random_fn({99}), &fb), 99u);
  EXPECT_TRUE(fb);
}

TEST(DepSameClass, PureBlock) {
  const auto& db = gen_db();
  for (Oid prev = 0; prev < 100; ++prev) {
    const auto& iter = db.class_of(prev).iterator;
    const auto whole = same_class_candidates(db, prev, 1.0);
    EXPECT_EQ(std::set<Oid>(whole.begin(), whole.end()), std::set<Oid>(iter.begin(), iter.end()));
    const auto block = same_class_candidates(db, prev, 0.1);
    EXPECT_EQ(block.size(), static_cast<std::size_t>(std::ceil(0.1 * iter.size())));
    EXPECT_EQ(block, same_class_candidates(db, prev, 0.1));
    // Consecutive iterator entries, wrapping.
    const auto start = std::find(iter.begin(), iter.end(), block.front()) - iter.begin();
    for (std::size_t k = 0; k < block.size(); ++k) EXPECT_EQ(block[k], iter[(start + k) % iter.size()]);
    for (Oid o : block) EXPECT_EQ(db.objects[o].class_id, db.objects[prev].class_id);
  }
}

TEST(DepSameClass, BlockOfTen) {
  ocb::Database db;
  db.params.nc = 1;
  db.params.no = 100;
  db.classes.resize(1);
  db.objects.resize(100);
  for (Oid o = 0; o < 100; ++o) {
    db.objects[o].oid = o;
    db.classes[0].iterator.push_back(o);
  }
  EXPECT_EQ(same_class_candidates(db, 37, 0.1).size(), 10u);
  Rng rng(1);
  const auto block = same_class_candidates(db, 37, 0.1);
  for (int i = 0; i < 100; ++i) {
    const Oid o = dep_same_class(37, 0.1, db, rng, uniform_random_fn({0}));
    EXPECT_NE(std::find(block.begin(), block.end(), o), block.end());
  }
}

TEST(Hybrid, ZeroRIsPureRandom) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::hybrid;
  cfg.dependency.r = 0;
  RootSelector sel(gen_db(), cfg, 1);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    sel.next(rng);
    EXPECT_EQ(sel.phase(), HybridPhase::randomize);
    EXPECT_EQ(sel.last_kind(), DepKind::random);
  }
}

TEST(Hybrid, AlternatesRandomAndSref) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::hybrid;
  cfg.dependency.random_dep_prob = 0;
  cfg.dependency.sref_dep_prob = 1;
  cfg.dependency.r = 1;
  const auto& db = gen_db();
  RootSelector sel(db, cfg, 1);
  Rng rng(1);
  std::optional<Oid> prev;
  for (int i = 0; i < 400; ++i) {
    const auto fallbacks = sel.fallbacks();
    const Oid root = sel.next(rng);
    if (i % 2 == 0) {
      EXPECT_EQ(sel.last_kind(), DepKind::random);
    } else {
      EXPECT_EQ(sel.last_kind(), DepKind::s_ref);
      if (sel.fallbacks() == fallbacks) {
        const auto c = sref_candidates(db, *prev);
        EXPECT_NE(std::find(c.begin(), c.end(), root), c.end());
      } else {
        EXPECT_TRUE(sref_candidates(db, *prev).empty());
      }
    }
    prev = root;
  }
  EXPECT_EQ(sel.kind_counts()[0], 200u);
  EXPECT_EQ(sel.kind_counts()[1], 200u);
}

TEST(Hybrid, ClassMixPhaseBookkeeping) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::hybrid;
  cfg.dependency.random_dep_prob = 0;
  cfg.dependency.class_dep_prob = 1;
  cfg.dependency.u = 0.2;
  cfg.dependency.r = 3;
  const auto& db = gen_db();
  RootSelector sel(db, cfg, 1);
  Rng rng(5);
  Oid prev = 0;
  for (int i = 0; i < 400; ++i) {
    const Oid root = sel.next(rng);
    if (i % 4 == 0) {
      EXPECT_EQ(sel.last_kind(), DepKind::random);
      EXPECT_EQ(sel.remaining(), 3u);
    } else {
      EXPECT_EQ(sel.last_kind(), DepKind::same_class);
      EXPECT_EQ(db.objects[root].class_id, db.objects[prev].class_id);
      EXPECT_LE(sel.remaining(), 3u);
    }
    prev = root;
  }
  EXPECT_EQ(sel.fallbacks(), 0u);
}

TEST(Hybrid, UnnormalizedMixRejected) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::hybrid;
  cfg.dependency.sref_dep_prob = 0.3;
  EXPECT_THROW(RootSelector(gen_db(), cfg, 1), ParameterError);
}

TEST(Hybrid, TraversedUsesObservedRecord) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::hybrid;
  cfg.dependency.random_dep_prob = 0;
  cfg.dependency.traversed_dep_prob = 1;
  cfg.dependency.r = 1;
  RootSelector sel(gen_db(), cfg, 1);
  Rng rng(1);
  sel.next(rng);
  sel.observe(record_of({101, 102, 103}));
  const Oid root = sel.next(rng);
  EXPECT_TRUE(root >= 101 && root <= 103);
  EXPECT_EQ(sel.fallbacks(), 0u);
}

TEST(Hybrid, Deterministic) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::hybrid;
  cfg.dependency.random_dep_prob = 0.2;
  cfg.dependency.sref_dep_prob = 0.3;
  cfg.dependency.dref_dep_prob = 0.2;
  cfg.dependency.class_dep_prob = 0.3;
  cfg.dependency.r = 4;
  RootSelector a(gen_db(), cfg, 8), b(gen_db(), cfg, 8);
  Rng ra(3), rb(3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(a.next(ra), b.next(rb));
}

TEST(Integrated, StochasticTraversalRejected) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::integrated;
  cfg.dependency.random_dep_prob = 0;
  cfg.dependency.traversed_dep_prob = 1;
  cfg.dependency.r = 1;
  EXPECT_THROW(RootSelector(gen_db(), cfg, 1, workload::OpKind::stochastic_traversal), ParameterError);
  EXPECT_NO_THROW(RootSelector(gen_db(), cfg, 1, workload::OpKind::simple_traversal));
}

TEST(Integrated, SingleCandidateReturned) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::integrated;
  cfg.dependency.random_dep_prob = 0;
  cfg.dependency.traversed_dep_prob = 1;
  cfg.dependency.r = 1;
  RootSelector sel(gen_db(), cfg, 1);
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    sel.next(rng);
    sel.observe(record_of({77}));
    EXPECT_EQ(sel.next(rng), 77u);
  }
}

TEST(Integrated, HotSubregionAdvancesEachTransaction) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::integrated;
  cfg.dependency.random_dep_prob = 0;
  cfg.dependency.traversed_dep_prob = 1;
  cfg.dependency.r = 1000;
  cfg.regional.n_regions = 11;
  cfg.regional.h_rate = 1.0;
  cfg.regional.regions.highest_prob_w = 1.0;
  cfg.regional.regions.lowest_prob_w = 0.0;
  // Class order makes the candidate-to-region mapping independent of the previous root.
  cfg.regional.regions.assign_method = AssignMethod::by_class;
  RootSelector sel(gen_db(), cfg, 1);
  Rng rng(1);
  sel.next(rng);
  const auto rec = record_of({200, 201, 202, 203, 204, 205, 206, 207, 208, 209, 210});
  std::set<Oid> picked;
  for (int i = 0; i < 11; ++i) {
    sel.observe(rec);
    const auto window = sel.regional()->state().window;
    EXPECT_EQ(window, static_cast<std::size_t>(i + 1) % 11);
    picked.insert(sel.next(rng));
  }
  // One candidate per region, and the only hot region moves each time: every candidate is hit once.
  EXPECT_EQ(picked.size(), 11u);
}

TEST(Integrated, MappingCoversRegionsInOrder) {
  HRegionSet layout;
  for (double s : {0.2, 0.3, 0.5}) {
    HRegion r;
    r.hr_size = s;
    layout.regions.push_back(r);
  }
  EXPECT_EQ(map_candidates_to_regions(10, layout), (std::vector<std::size_t>{0, 0, 1, 1, 1, 2, 2, 2, 2, 2}));
  const auto m = map_candidates_to_regions(3, layout);
  EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
  EXPECT_EQ(m.back(), 2u);
  // 334 tiny regions over 11 candidates: every candidate in its own region.
  HRegionSet many;
  many.regions.assign(334, HRegion{});
  for (auto& r : many.regions) r.hr_size = 1.0 / 334;
  const auto mm = map_candidates_to_regions(11, many);
  EXPECT_EQ(std::set<std::size_t>(mm.begin(), mm.end()).size(), 11u);
}

TEST(Integrated, SamePrevSameDistribution) {
  SelectorConfig cfg;
  cfg.mode = SelectorMode::integrated;
  cfg.dependency.random_dep_prob = 0;
  cfg.dependency.sref_dep_prob = 1;
  cfg.dependency.r = 1;
  cfg.regional.h_rate = std::ldexp(1.0, -11);
  const auto& db = gen_db();
  Oid root = 0;
  while (db.objects[root].orefs.size() < 4) ++root;
  // Two selectors sharing state and prev root produce identical picks with identical rng.
  RootSelector a(db, cfg, 3), b(db, cfg, 3);
  Rng ra(1), rb(1);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(a.next(ra), b.next(rb));
}

TEST(Regional, SelectorUsesDriver) {
  SelectorConfig cfg;
  cfg.regional.n_regions = 10;
  cfg.regional.h_rate = 0.5;
  RootSelector sel(gen_db(), cfg, 1);
  ASSERT_NE(sel.regional(), nullptr);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) sel.next(rng);
  EXPECT_EQ(sel.regional()->change_iterations(), 5u);
  EXPECT_EQ(sel.selections(), 10u);
  EXPECT_EQ(parse_selector_mode(to_string(SelectorMode::integrated)), SelectorMode::integrated);
}
