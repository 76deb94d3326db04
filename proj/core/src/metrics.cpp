#include "reldim/metrics.hpp"

#include "reldim/correlation.hpp"
#include "reldim/error.hpp"

namespace reldim {

double auc(std::span<const double> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) throw ValidationError("auc: scores and labels differ in length");
  std::size_t n_pos = 0;
  for (bool l : labels) n_pos += l ? 1 : 0;
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw ValidationError("auc is undefined without both classes");

  // Rank-sum form of the Mann-Whitney statistic; average ranks count ties 1/2.
  const auto ranks = average_ranks(scores);
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (labels[i]) rank_sum += ranks[i];
  }
  const double np = static_cast<double>(n_pos);
  const double u = rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

Confusion confusion(std::span<const double> scores, const std::vector<bool>& labels, double threshold) {
  if (scores.size() != labels.size()) throw ValidationError("confusion: scores and labels differ in length");
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    if (predicted) {
      ++(labels[i] ? c.tp : c.fp);
    } else {
      ++(labels[i] ? c.fn : c.tn);
    }
  }
  return c;
}

double precision(const Confusion& c) noexcept {
  const std::size_t predicted = c.tp + c.fp;
  return predicted == 0 ? 0.0 : static_cast<double>(c.tp) / static_cast<double>(predicted);
}

double accuracy(const Confusion& c) noexcept {
  const std::size_t n = c.tp + c.fp + c.tn + c.fn;
  return n == 0 ? 0.0 : static_cast<double>(c.tp + c.tn) / static_cast<double>(n);
}

}  // namespace reldim
