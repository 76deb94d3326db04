#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "reldim/spectral.hpp"

using namespace reldim;

namespace {

std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) w[i * n + j] = w[j * n + i] = u(gen);
  }
  return w;
}

}  // namespace

TEST(Laplacian, RowsSumToZero) {
  const std::size_t n = 12;
  const auto l = laplacian(random_weights(n, 1), n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += l[i * n + j];
    EXPECT_NEAR(s, 0.0, 1e-12);
    EXPECT_GE(l[i * n + i], 0.0);
  }
}

TEST(Fiedler, MatchesDenseEigensolver) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 8 + seed * 3;
    const auto l = laplacian(random_weights(n, seed), n);
    const oracle::Eigenpair want = oracle::second_smallest(l, n);
    if (want.gap < 1e-3) continue;  // vector not well defined
    const FiedlerResult got = fiedler_vector(l, n);
    EXPECT_TRUE(got.converged);
    EXPECT_NEAR(got.eigenvalue, want.value, 1e-7 * std::max(1.0, want.value));
    const double dot = std::inner_product(got.vector.begin(), got.vector.end(), want.vector.begin(), 0.0);
    EXPECT_NEAR(std::abs(dot), 1.0, 1e-6) << "seed " << seed;
  }
}

TEST(Fiedler, OrthogonalToConstant) {
  const std::size_t n = 20;
  const FiedlerResult r = fiedler_vector(laplacian(random_weights(n, 4), n), n);
  EXPECT_NEAR(std::accumulate(r.vector.begin(), r.vector.end(), 0.0), 0.0, 1e-9);
  EXPECT_NEAR(std::inner_product(r.vector.begin(), r.vector.end(), r.vector.begin(), 0.0), 1.0, 1e-9);
}

TEST(Fiedler, Deterministic) {
  const std::size_t n = 25;
  const auto l = laplacian(random_weights(n, 5), n);
  EXPECT_EQ(fiedler_vector(l, n).vector, fiedler_vector(l, n).vector);
}

TEST(SignSplit, NearZeroEntriesBalanceSizes) {
  const std::vector<double> f{0.5, 0.4, 0.3, -0.5, 1e-12, -1e-12};
  const Bisection b = sign_split(f);
  EXPECT_EQ(b.first.size() + b.second.size(), 6u);
  EXPECT_EQ(b.first.size(), 3u);
  EXPECT_EQ(b.second.size(), 3u);
}

TEST(SpectralBisection, TwoCliques) {
  const std::size_t n = 10;
  std::vector<double> w(n * n, 0.05);
  for (std::size_t i = 0; i < n; ++i) {
    w[i * n + i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && (i < 5) == (j < 5)) w[i * n + j] = 1.0;
    }
  }
  const Bisection b = spectral_bisection(w, n);
  EXPECT_EQ(b.first, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(b.second, (std::vector<std::size_t>{5, 6, 7, 8, 9}));
}
