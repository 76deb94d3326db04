#include "reldim/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "reldim/error.hpp"

namespace reldim {

std::vector<double> average_ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && x[order[j]] == x[order[i]]) ++j;
    // Positions i..j-1 share ranks i+1..j.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

namespace {

// Centers x and scales it to unit norm in place. Returns false for zero
// variance.
bool standardize(std::vector<double>& x) {
  if (x.empty()) return false;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double ss = 0.0;
  for (double& v : x) {
    v -= mean;
    ss += v * v;
  }
  if (ss <= 0.0) return false;
  const double inv = 1.0 / std::sqrt(ss);
  for (double& v : x) v *= inv;
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("pearson: length mismatch");
  std::vector<double> a(x.begin(), x.end());
  std::vector<double> b(y.begin(), y.end());
  if (!standardize(a) || !standardize(b)) return 0.0;
  return std::clamp(dot(a, b), -1.0, 1.0);
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("spearman: length mismatch");
  return pearson(average_ranks(x), average_ranks(y));
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::string> words, std::vector<double> values)
    : words_(std::move(words)), values_(std::move(values)) {
  if (values_.size() != words_.size() * words_.size()) {
    throw ValidationError("correlation grid size does not match word count");
  }
}

CorrelationMatrix spearman_matrix(const RatingMatrix& r, std::span<const std::size_t> raters) {
  const std::size_t n = r.word_count();
  std::vector<std::vector<double>> z(n);
  std::vector<bool> ok(n);
  std::vector<double> column(raters.size());
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t j = 0; j < raters.size(); ++j) column[j] = r.at(w, raters[j]);
    z[w] = average_ranks(column);
    ok[w] = standardize(z[w]);
  }
  std::vector<double> values(n * n, 0.0);
  std::vector<std::size_t> degenerate;
  for (std::size_t i = 0; i < n; ++i) {
    values[i * n + i] = 1.0;
    if (!ok[i]) {
      degenerate.push_back(i);
      continue;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!ok[j]) continue;
      const double c = std::clamp(dot(z[i], z[j]), -1.0, 1.0);
      values[i * n + j] = c;
      values[j * n + i] = c;
    }
  }
  CorrelationMatrix m(r.words(), std::move(values));
  m.degenerate_words = std::move(degenerate);
  return m;
}

CorrelationMatrix spearman_matrix(const RatingMatrix& r) {
  std::vector<std::size_t> all(r.rater_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return spearman_matrix(r, all);
}

}  // namespace reldim
