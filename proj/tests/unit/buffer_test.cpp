#include <gtest/gtest.h>

#include <cmath>

#include "doef/sim/buffer.hpp"
#include "oracles.hpp"

using namespace doef;
using namespace doef::sim;

namespace {

std::vector<PageId> random_trace(Rng& rng, std::size_t len, PageId pages) {
  std::vector<PageId> t(len);
  for (auto& p : t) p = uniform_int<PageId>(rng, 0, pages - 1);
  return t;
}

template <typename F>
std::uint64_t misses(BufferPool& pool, const std::vector<PageId>& trace, F&& check) {
  std::uint64_t m = 0;
  for (auto p : trace) {
    m += !pool.probe(p).hit;
    check();
  }
  return m;
}

}  // namespace

TEST(Buffer, EmptyMissNoEviction) {
  BufferPool pool(4, Replacement::lru);
  const auto r = pool.probe(9);
  EXPECT_FALSE(r.hit);
  EXPECT_FALSE(r.evicted.has_value());
  EXPECT_TRUE(pool.contains(9));
}

TEST(Buffer, LruEvictsLeastRecent) {
  BufferPool pool(2, Replacement::lru);
  pool.probe('A');
  pool.probe('B');
  EXPECT_TRUE(pool.probe('A').hit);
  const auto r = pool.probe('C');
  ASSERT_TRUE(r.evicted.has_value());
  EXPECT_EQ(*r.evicted, PageId{'B'});
}

TEST(Buffer, ZeroCapacityRejected) {
  EXPECT_THROW(BufferPool(0, Replacement::lru), ParameterError);
  EXPECT_EQ(parse_replacement("LRU-1"), Replacement::lru);
  EXPECT_EQ(parse_replacement(to_string(Replacement::clock)), Replacement::clock);
  EXPECT_THROW(parse_replacement("fifo"), ParameterError);
}

TEST(Buffer, LruMatchesNaiveOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const auto cap = uniform_int<std::size_t>(rng, 1, 64);
    const auto trace = random_trace(rng, uniform_int<std::size_t>(rng, 1, 3000), uniform_int<PageId>(rng, 1, 150));
    BufferPool pool(cap, Replacement::lru);
    oracle::NaiveLru ref(cap);
    for (auto p : trace) {
      ASSERT_EQ(!pool.probe(p).hit, ref.access(p));
      ASSERT_LE(pool.size(), cap);
    }
    auto expect = ref.pages();
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(pool.resident(), expect);
  }
}

TEST(Buffer, ClockMatchesNaiveOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const auto cap = uniform_int<std::size_t>(rng, 1, 64);
    const auto trace = random_trace(rng, uniform_int<std::size_t>(rng, 1, 3000), uniform_int<PageId>(rng, 1, 150));
    BufferPool pool(cap, Replacement::clock);
    const auto m = misses(pool, trace, [&] { ASSERT_LE(pool.size(), cap); });
    EXPECT_EQ(m, oracle::count_misses<oracle::NaiveClock>(trace, cap));
  }
}

TEST(Buffer, ClockCloseToLruOnRandomTrace) {
  Rng rng(3);
  const auto trace = random_trace(rng, 10'000, 200);
  BufferPool lru(64, Replacement::lru), clock(64, Replacement::clock);
  const double a = static_cast<double>(misses(lru, trace, [] {})) / trace.size();
  const double b = static_cast<double>(misses(clock, trace, [] {})) / trace.size();
  EXPECT_LT(std::abs(a - b), 0.05);
}

TEST(Buffer, DirtyTracking) {
  for (auto policy : {Replacement::lru, Replacement::clock}) {
    BufferPool pool(2, policy);
    pool.probe(1, true);
    pool.probe(2);
    EXPECT_TRUE(pool.is_dirty(1));
    EXPECT_FALSE(pool.is_dirty(2));
    pool.probe(3);  // evicts 1 under both policies
    pool.probe(4);
    EXPECT_FALSE(pool.contains(1));
    BufferPool p2(1, policy);
    p2.probe(5, true);
    const auto r = p2.probe(6);
    EXPECT_TRUE(r.evicted_dirty);
    EXPECT_FALSE(r.evicted_cluster_dirty);
  }
}

TEST(Buffer, ClusterWritesDeferred) {
  for (auto policy : {Replacement::lru, Replacement::clock}) {
    BufferPool pool(2, policy);
    EXPECT_FALSE(pool.absorb_cluster_write(7));  // not resident: caller writes through
    pool.probe(7);
    EXPECT_TRUE(pool.absorb_cluster_write(7));
    EXPECT_TRUE(pool.is_cluster_dirty(7));
    // Already dirtied by a transaction: the rewrite rides along for free.
    pool.probe(8, true);
    EXPECT_TRUE(pool.absorb_cluster_write(8));
    EXPECT_FALSE(pool.is_cluster_dirty(8));
    EXPECT_EQ(pool.flush_cluster_dirty(), 1u);
    EXPECT_FALSE(pool.is_cluster_dirty(7));
    EXPECT_EQ(pool.flush_cluster_dirty(), 0u);

    BufferPool one(1, policy);
    one.probe(1);
    one.absorb_cluster_write(1);
    const auto r = one.probe(2);
    EXPECT_TRUE(r.evicted_cluster_dirty);
    EXPECT_FALSE(r.evicted_dirty);

    // A transaction write supersedes the pending clustering write.
    BufferPool w(1, policy);
    w.probe(1);
    w.absorb_cluster_write(1);
    w.probe(1, true);
    EXPECT_FALSE(w.is_cluster_dirty(1));
    const auto r2 = w.probe(2);
    EXPECT_TRUE(r2.evicted_dirty);
    EXPECT_FALSE(r2.evicted_cluster_dirty);
  }
}
