#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

namespace oracle {

EdgeList random_digraph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution coin(p);
  EdgeList g;
  g.n = n;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (u != v && coin(gen)) g.edges.emplace(u, v);
    }
  }
  return g;
}

std::size_t common_neighbors(const EdgeList& g, std::size_t u, std::size_t v) {
  std::size_t common = 0;
  for (std::size_t w = 0; w < g.n; ++w) {
    if (g.edges.count({u, w}) && g.edges.count({w, v})) ++common;
  }
  return common;
}

double triangle_overlap(const EdgeList& g, std::size_t u, std::size_t v) {
  std::size_t out = 0;
  for (const auto& e : g.edges) {
    if (e.first == u) ++out;
  }
  if (out == 0) return 0.0;
  return static_cast<double>(common_neighbors(g, u, v)) / static_cast<double>(out);
}

std::vector<long double> ranks(const std::vector<double>& x) {
  std::vector<long double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t smaller = 0;
    std::size_t equal = 0;
    for (double y : x) {
      if (y < x[i]) ++smaller;
      if (y == x[i]) ++equal;
    }
    r[i] = 1.0L + smaller + (equal - 1) / 2.0L;
  }
  return r;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const std::size_t n = x.size();
  long double mx = 0;
  long double my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  long double sxy = 0;
  long double sxx = 0;
  long double syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

double auc(const std::vector<double>& scores, const std::vector<bool>& labels) {
  long double wins = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      ++pairs;
      if (scores[i] > scores[j]) {
        wins += 1;
      } else if (scores[i] == scores[j]) {
        wins += 0.5L;
      }
    }
  }
  return static_cast<double>(wins / pairs);
}

Eigenpair second_smallest(const std::vector<double>& matrix, std::size_t n) {
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = matrix[i * n + j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  Eigenpair out;
  out.value = solver.eigenvalues()(1);
  out.gap = n > 2 ? solver.eigenvalues()(2) - solver.eigenvalues()(1) : 0.0;
  out.vector.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.vector[i] = solver.eigenvectors()(i, 1);
  return out;
}

double best_threshold_accuracy(const std::vector<double>& x, const std::vector<bool>& labels) {
  std::vector<double> cuts(x.begin(), x.end());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.insert(cuts.begin(), cuts.front() - 1.0);
  double best = 0.0;
  for (double c : cuts) {
    std::size_t right = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if ((x[i] > c) == labels[i]) ++right;
    }
    const double acc = static_cast<double>(right) / x.size();
    best = std::max({best, acc, 1.0 - acc});
  }
  return best;
}

}  // namespace oracle
