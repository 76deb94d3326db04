#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace reldim {

struct RaterInfo {
  std::string id;
  std::optional<std::string> gender;
  std::optional<double> age;
  std::optional<std::string> race;
};

// Words x raters grid of 1-5 ratings. Every cell is filled: missing cells are
// imputed at load time, and imputed() records which ones were.
class RatingMatrix {
 public:
  RatingMatrix() = default;
  // values is row-major (word-major), words.size() * raters.size() long, all
  // in [1,5]. Throws ValidationError otherwise or on duplicate words.
  RatingMatrix(std::vector<std::string> words, std::vector<RaterInfo> raters,
               std::vector<double> values, std::vector<bool> imputed = {});

  std::size_t word_count() const noexcept { return words_.size(); }
  std::size_t rater_count() const noexcept { return raters_.size(); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  const std::vector<RaterInfo>& raters() const noexcept { return raters_; }

  double at(std::size_t word, std::size_t rater) const { return values_[word * raters_.size() + rater]; }
  bool imputed(std::size_t word, std::size_t rater) const {
    return !imputed_.empty() && imputed_[word * raters_.size() + rater];
  }
  std::span<const double> row(std::size_t word) const {
    return {values_.data() + word * raters_.size(), raters_.size()};
  }
  std::span<const double> values() const noexcept { return values_; }

  // Mean rating over the given words and every rater.
  double grand_mean(std::span<const std::size_t> words) const;

  // Same words, ratings mapped r -> 6 - r.
  RatingMatrix reversed() const;

 private:
  std::vector<std::string> words_;
  std::vector<RaterInfo> raters_;
  std::vector<double> values_;
  std::vector<bool> imputed_;
};

struct LoadedRatings {
  RatingMatrix matrix;
  std::size_t imputed_cells = 0;
  std::size_t duplicate_pairs = 0;
  std::vector<std::string> dropped_raters;
  std::vector<std::string> warnings;
};

// Delimited text with header word,rater,rating and optional gender,age,race
// columns (any order). A rating field that is empty, "NA" or "?" marks a
// missing cell. Missing cells take the rater's median rating; repeated
// (word, rater) pairs keep the last value; raters with no ratings are dropped.
LoadedRatings read_ratings(std::istream& in);
LoadedRatings load_ratings(const std::filesystem::path& path);

void write_ratings(std::ostream& out, const RatingMatrix& m);

}  // namespace reldim
