#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "reldim/rng.hpp"

using reldim::Rng;

TEST(Rng, SameSeedSameStream) {
  Rng a(42);
  Rng b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Rng, DeriveSeedSeparatesStreams) {
  EXPECT_NE(reldim::derive_seed(1, 0), reldim::derive_seed(1, 1));
  EXPECT_NE(reldim::derive_seed(1, 0), reldim::derive_seed(2, 0));
  EXPECT_NE(reldim::derive_seed(1, 2, 3), reldim::derive_seed(1, 3, 2));
  EXPECT_EQ(reldim::derive_seed(9, 4, 5), reldim::derive_seed(9, 4, 5));
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  Rng r(3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto x = r.below(7);
    ASSERT_LT(x, 7u);
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(Rng, UniformInUnitInterval) {
  Rng r(5);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}

TEST(Rng, NormalMoments) {
  Rng r(11);
  double s = 0;
  double s2 = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 0.03);
  EXPECT_NEAR(s2 / n, 1.0, 0.05);
}

TEST(Rng, SampleWithoutReplacementDistinct) {
  Rng r(8);
  const auto s = r.sample_without_replacement(50, 20);
  ASSERT_EQ(s.size(), 20u);
  EXPECT_EQ(std::set<std::size_t>(s.begin(), s.end()).size(), 20u);
  for (auto x : s) EXPECT_LT(x, 50u);
  const auto all = r.sample_without_replacement(10, 10);
  EXPECT_EQ(std::set<std::size_t>(all.begin(), all.end()).size(), 10u);
}

TEST(Rng, ShuffleIsPermutation) {
  Rng r(1);
  std::vector<int> v(30);
  for (int i = 0; i < 30; ++i) v[i] = i;
  auto w = v;
  r.shuffle(w);
  EXPECT_NE(v, w);
  std::sort(w.begin(), w.end());
  EXPECT_EQ(v, w);
}
