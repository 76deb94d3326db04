#include "reldim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "reldim/error.hpp"
#include "reldim/rng.hpp"

namespace reldim {

std::vector<double> laplacian(std::span<const double> weights, std::size_t n) {
  if (weights.size() != n * n) throw ValidationError("laplacian: weight matrix is not n x n");
  std::vector<double> l(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      l[i * n + j] = -weights[i * n + j];
      degree += weights[i * n + j];
    }
    l[i * n + i] = degree;
  }
  return l;
}

namespace {

void remove_mean(std::vector<double>& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

double norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

FiedlerResult fiedler_vector(std::span<const double> lap, std::size_t n, const EigenOptions& options) {
  if (lap.size() != n * n) throw ValidationError("fiedler_vector: matrix is not n x n");
  FiedlerResult result;
  if (n < 2) {
    result.vector.assign(n, 0.0);
    result.converged = true;
    return result;
  }

  // Gershgorin: every Laplacian eigenvalue is at most twice the max degree.
  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) shift = std::max(shift, 2.0 * lap[i * n + i]);

  Rng rng(options.seed);
  std::vector<double> x(n);
  for (double& v : x) v = rng.normal();
  remove_mean(x);
  double nx = norm(x);
  for (double& v : x) v /= nx;

  if (shift <= 0.0) {
    // Zero Laplacian: every vector is an eigenvector.
    result.vector = std::move(x);
    result.converged = true;
    return result;
  }

  std::vector<double> y(n);
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    // y = (shift*I - L) x
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = lap.data() + i * n;
      double s = shift * x[i];
      for (std::size_t j = 0; j < n; ++j) s -= row[j] * x[j];
      y[i] = s;
    }
    remove_mean(y);
    double mu = 0.0;
    for (std::size_t i = 0; i < n; ++i) mu += x[i] * y[i];
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += (y[i] - mu * x[i]) * (y[i] - mu * x[i]);
    residual = std::sqrt(residual);

    const double ny = norm(y);
    result.iterations = it;
    result.eigenvalue = shift - mu;
    if (ny == 0.0) {
      // x lies in the eigenspace of eigenvalue == shift; keep it.
      result.converged = true;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    if (residual <= options.tolerance * shift) {
      result.converged = true;
      break;
    }
  }
  result.vector = std::move(x);
  return result;
}

Bisection sign_split(std::span<const double> fiedler, double zero_band) {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  std::vector<std::size_t> zero;
  for (std::size_t i = 0; i < fiedler.size(); ++i) {
    if (fiedler[i] > zero_band) {
      pos.push_back(i);
    } else if (fiedler[i] < -zero_band) {
      neg.push_back(i);
    } else {
      zero.push_back(i);
    }
  }
  for (std::size_t i : zero) (pos.size() <= neg.size() ? pos : neg).push_back(i);
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  const bool pos_first = !pos.empty() && (neg.empty() || pos.front() < neg.front());
  return pos_first ? Bisection{std::move(pos), std::move(neg)} : Bisection{std::move(neg), std::move(pos)};
}

Bisection spectral_bisection(std::span<const double> weights, std::size_t n, const EigenOptions& options) {
  const auto lap = laplacian(weights, n);
  const auto f = fiedler_vector(lap, n, options);
  return sign_split(f.vector);
}

}  // namespace reldim
