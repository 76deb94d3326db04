#include "reldim/ratings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "csv.hpp"
#include "reldim/error.hpp"

namespace reldim {

RatingMatrix::RatingMatrix(std::vector<std::string> words, std::vector<RaterInfo> raters,
                           std::vector<double> values, std::vector<bool> imputed)
    : words_(std::move(words)),
      raters_(std::move(raters)),
      values_(std::move(values)),
      imputed_(std::move(imputed)) {
  if (values_.size() != words_.size() * raters_.size()) {
    throw ValidationError("rating grid size does not match words x raters");
  }
  if (!imputed_.empty() && imputed_.size() != values_.size()) {
    throw ValidationError("imputation mask size does not match the grid");
  }
  std::unordered_set<std::string> seen;
  for (const std::string& w : words_) {
    if (!seen.insert(w).second) throw ValidationError("duplicate word '" + w + "'");
  }
  for (double v : values_) {
    if (!(v >= 1.0 && v <= 5.0)) throw ValidationError("rating outside [1,5]");
  }
}

double RatingMatrix::grand_mean(std::span<const std::size_t> words) const {
  double sum = 0.0;
  for (std::size_t w : words) {
    for (double v : row(w)) sum += v;
  }
  const double n = static_cast<double>(words.size() * raters_.size());
  return n > 0 ? sum / n : 0.0;
}

RatingMatrix RatingMatrix::reversed() const {
  std::vector<double> flipped(values_.size());
  std::transform(values_.begin(), values_.end(), flipped.begin(), [](double v) { return 6.0 - v; });
  return RatingMatrix(words_, raters_, std::move(flipped), imputed_);
}

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

bool is_missing_marker(const std::string& s) { return s.empty() || s == "NA" || s == "na" || s == "?"; }

double parse_rating(const std::string& s, std::size_t line_no) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("rating '" + s + "' is not an integer", line_no);
  }
  if (v < 1 || v > 5) throw ParseError("rating " + s + " outside [1,5]", line_no);
  return v;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

LoadedRatings read_ratings(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_line(in, line, line_no)) throw ParseError("empty ratings file");
  auto header = detail::split_csv_line(line, line_no);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[detail::to_lower(header[i])] = i;
  for (const char* required : {"word", "rater", "rating"}) {
    if (!column.contains(required)) {
      throw ParseError(std::string("header is missing column '") + required + "'", line_no);
    }
  }
  auto optional_column = [&](const char* name) -> std::optional<std::size_t> {
    if (auto it = column.find(name); it != column.end()) return it->second;
    return std::nullopt;
  };
  const std::size_t word_col = column["word"];
  const std::size_t rater_col = column["rater"];
  const std::size_t rating_col = column["rating"];
  const auto gender_col = optional_column("gender");
  const auto age_col = optional_column("age");
  const auto race_col = optional_column("race");

  LoadedRatings out;
  std::vector<std::string> words;
  std::unordered_map<std::string, std::size_t> word_index;
  std::vector<RaterInfo> raters;
  std::unordered_map<std::string, std::size_t> rater_index;
  std::map<std::pair<std::size_t, std::size_t>, double> cells;

  while (detail::next_line(in, line, line_no)) {
    const auto fields = detail::split_csv_line(line, line_no);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    const std::string word = detail::to_lower(fields[word_col]);
    const std::string& rater = fields[rater_col];
    if (word.empty() || rater.empty()) throw ParseError("empty word or rater", line_no);

    auto [wit, new_word] = word_index.try_emplace(word, words.size());
    if (new_word) words.push_back(word);
    auto [rit, new_rater] = rater_index.try_emplace(rater, raters.size());
    if (new_rater) raters.push_back(RaterInfo{rater, {}, {}, {}});
    RaterInfo& info = raters[rit->second];
    if (gender_col && !fields[*gender_col].empty()) info.gender = detail::to_lower(fields[*gender_col]);
    if (race_col && !fields[*race_col].empty()) info.race = detail::to_lower(fields[*race_col]);
    if (age_col && !fields[*age_col].empty()) {
      double age = 0;
      const std::string& s = fields[*age_col];
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), age);
      if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("age '" + s + "' is not a number", line_no);
      }
      info.age = age;
    }

    const double value = is_missing_marker(fields[rating_col]) ? kMissing
                                                               : parse_rating(fields[rating_col], line_no);
    auto key = std::make_pair(wit->second, rit->second);
    if (auto it = cells.find(key); it != cells.end()) {
      ++out.duplicate_pairs;
      it->second = value;
    } else {
      cells.emplace(key, value);
    }
  }
  if (out.duplicate_pairs > 0) {
    out.warnings.push_back(std::to_string(out.duplicate_pairs) +
                           " duplicate (word, rater) pairs; kept the last value");
  }

  // Per-rater present ratings, for dropping and median imputation.
  std::vector<std::vector<double>> present(raters.size());
  for (const auto& [key, value] : cells) {
    if (!std::isnan(value)) present[key.second].push_back(value);
  }
  std::vector<std::size_t> kept;
  std::vector<std::size_t> remap(raters.size(), SIZE_MAX);
  for (std::size_t r = 0; r < raters.size(); ++r) {
    if (present[r].empty()) {
      out.dropped_raters.push_back(raters[r].id);
      out.warnings.push_back("rater '" + raters[r].id + "' has no ratings; dropped");
    } else {
      remap[r] = kept.size();
      kept.push_back(r);
    }
  }
  std::vector<double> medians(raters.size(), 0.0);
  for (std::size_t r : kept) medians[r] = median(present[r]);

  const std::size_t nr = kept.size();
  std::vector<double> values(words.size() * nr, kMissing);
  for (const auto& [key, value] : cells) {
    if (remap[key.second] != SIZE_MAX) values[key.first * nr + remap[key.second]] = value;
  }
  std::vector<bool> imputed(values.size(), false);
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (std::size_t j = 0; j < nr; ++j) {
      double& v = values[w * nr + j];
      if (std::isnan(v)) {
        v = medians[kept[j]];
        imputed[w * nr + j] = true;
        ++out.imputed_cells;
      }
    }
  }
  std::vector<RaterInfo> kept_info;
  kept_info.reserve(nr);
  for (std::size_t r : kept) kept_info.push_back(std::move(raters[r]));
  out.matrix = RatingMatrix(std::move(words), std::move(kept_info), std::move(values), std::move(imputed));
  return out;
}

LoadedRatings load_ratings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open ratings file " + path.string());
  return read_ratings(in);
}

void write_ratings(std::ostream& out, const RatingMatrix& m) {
  out << "word,rater,rating,gender,age,race\n";
  for (std::size_t w = 0; w < m.word_count(); ++w) {
    for (std::size_t r = 0; r < m.rater_count(); ++r) {
      const RaterInfo& info = m.raters()[r];
      out << m.words()[w] << ',' << info.id << ',';
      if (!m.imputed(w, r)) out << m.at(w, r);
      out << ',' << info.gender.value_or("") << ',';
      if (info.age) out << *info.age;
      out << ',' << info.race.value_or("") << '\n';
    }
  }
}

}  // namespace reldim
