#include "reldim/synth_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_map>

#include "reldim/error.hpp"
#include "reldim/rng.hpp"

namespace reldim {

namespace {

constexpr std::int8_t kUntyped = -1;

constexpr std::uint64_t pair_key(NodeIndex src, NodeIndex dst) noexcept {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string(what) + " must lie in [0,1]");
}

// Mutable working graph for the closure phase.
struct WorkGraph {
  std::unordered_map<std::uint64_t, std::int8_t> planted;
  std::vector<std::vector<NodeIndex>> processed_out;
  std::vector<std::vector<NodeIndex>> processed_in;
  std::deque<std::pair<NodeIndex, NodeIndex>> pending;
  std::vector<std::uint64_t> closure_keys;
};

class DimensionPicker {
 public:
  DimensionPicker(const SynthParams& params, const Lexicon& lexicon) {
    bool any_weight = false;
    for (double w : params.dimension_weights) {
      if (w < 0.0 || !std::isfinite(w)) throw ConfigError("dimension weights must be non-negative");
      any_weight = any_weight || w > 0.0;
    }
    for (const LexiconEntry* e : lexicon.labeling_entries()) {
      const double w =
          any_weight ? params.dimension_weights[static_cast<std::size_t>(e->dimension)] : 1.0;
      if (w > 0.0) {
        dims_.push_back(e->dimension);
        cumulative_.push_back((cumulative_.empty() ? 0.0 : cumulative_.back()) + w);
      }
    }
    if (any_weight) {
      for (Dimension d : kAllDimensions) {
        const double w = params.dimension_weights[static_cast<std::size_t>(d)];
        if (w > 0.0 && std::find(dims_.begin(), dims_.end(), d) == dims_.end()) {
          throw ConfigError("dimension '" + std::string(to_string(d)) +
                            "' has a planting weight but no lexicon words");
        }
      }
    }
    untyped_fraction_ = params.untyped_fraction;
  }

  std::int8_t pick(Rng& rng) const {
    if (dims_.empty() || rng.bernoulli(untyped_fraction_)) return kUntyped;
    const double x = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), x);
    if (it == cumulative_.end()) --it;
    return static_cast<std::int8_t>(dims_[static_cast<std::size_t>(it - cumulative_.begin())]);
  }

 private:
  std::vector<Dimension> dims_;
  std::vector<double> cumulative_;
  double untyped_fraction_ = 0.0;
};

double closure_probability(const SynthParams& params, std::int8_t planted) {
  if (planted == kUntyped) return params.untyped_closure;
  return params.closure[static_cast<std::size_t>(planted)];
}

}  // namespace

const std::vector<std::string>& synth_noise_vocabulary() {
  static const std::vector<std::string> words = {
      "book",  "read",   "chapter", "novel", "author", "library", "hello", "thanks",
      "today", "page",   "story",   "shelf", "review", "write",   "week",  "news",
      "great", "maybe",  "later",   "just",  "think",  "know",    "well",  "time",
  };
  return words;
}

SynthResult synth_graph(const SynthParams& params, const Lexicon& lexicon, std::uint64_t seed) {
  if (params.n_nodes < 3) throw ConfigError("synthetic graph needs at least 3 nodes");
  if (params.n_nodes > 0xffffffffULL) throw ConfigError("too many nodes");
  check_probability(params.base_density, "base_density");
  check_probability(params.untyped_fraction, "untyped_fraction");
  check_probability(params.untyped_closure, "untyped closure probability");
  for (Dimension d : kAllDimensions) {
    const double p = params.closure[static_cast<std::size_t>(d)];
    check_probability(p, "closure probability");
    if (p > 0.0) {
      const LexiconEntry* e = lexicon.find(d);
      if (!e || e->words.empty() || !is_lexicon_bearing(d)) {
        throw ConfigError("closure probability set for dimension '" + std::string(to_string(d)) +
                          "' which has no lexicon words");
      }
    }
  }
  const DimensionPicker picker(params, lexicon);

  std::vector<std::string> noise;
  for (const std::string& w : synth_noise_vocabulary()) {
    bool in_lexicon = false;
    for (const LexiconEntry& e : lexicon.entries()) in_lexicon = in_lexicon || e.words.contains(w);
    if (!in_lexicon) noise.push_back(w);
  }
  if (noise.empty() && params.noise_words_per_edge > 0) {
    throw ConfigError("every noise word collides with the lexicon");
  }

  const auto n = static_cast<NodeIndex>(params.n_nodes);
  Rng structure(derive_seed(seed, 1));
  WorkGraph work;
  work.processed_out.resize(n);
  work.processed_in.resize(n);

  auto add_edge = [&](NodeIndex u, NodeIndex v) {
    work.planted.emplace(pair_key(u, v), picker.pick(structure));
    work.pending.emplace_back(u, v);
    if (params.max_edges != 0 && work.planted.size() > params.max_edges) {
      throw ConfigError("synthetic graph exceeded max_edges=" + std::to_string(params.max_edges) +
                        "; lower closure probabilities or density");
    }
  };

  // Seed graph: geometric skipping over the n-1 candidate targets of each u.
  const double p = params.base_density;
  if (p > 0.0) {
    const double log_q = std::log1p(-p);
    for (NodeIndex u = 0; u < n; ++u) {
      std::uint64_t j = 0;
      const std::uint64_t candidates = n - 1;
      while (true) {
        if (p < 1.0) {
          double r = structure.uniform();
          while (r <= 0.0) r = structure.uniform();
          j += static_cast<std::uint64_t>(std::floor(std::log(r) / log_q));
        }
        if (j >= candidates) break;
        const auto v = static_cast<NodeIndex>(j < u ? j : j + 1);
        add_edge(u, v);
        ++j;
      }
    }
  }
  const std::size_t seed_edges = work.planted.size();

  // Closure. A 2-path is decided when the later of its two edges is
  // processed, so each one is visited exactly once.
  auto decide = [&](NodeIndex u, NodeIndex w, NodeIndex v) {
    if (u == v || work.planted.contains(pair_key(u, v))) return;
    const double c = closure_probability(params, work.planted.at(pair_key(u, w)));
    if (structure.bernoulli(c)) {
      add_edge(u, v);
      work.closure_keys.push_back(pair_key(u, v));
    }
  };
  while (!work.pending.empty()) {
    const auto [a, b] = work.pending.front();
    work.pending.pop_front();
    for (NodeIndex y : work.processed_out[b]) decide(a, b, y);
    for (NodeIndex x : work.processed_in[a]) decide(x, a, b);
    work.processed_out[a].push_back(b);
    work.processed_in[b].push_back(a);
  }

  std::vector<std::uint64_t> keys;
  keys.reserve(work.planted.size());
  for (const auto& [key, dim] : work.planted) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  std::sort(work.closure_keys.begin(), work.closure_keys.end());

  GraphBuilder builder;
  for (NodeIndex i = 0; i < n; ++i) builder.add_node("u" + std::to_string(i));

  Rng words(derive_seed(seed, 2));
  SynthResult result;
  result.truth.closure = params.closure;
  result.truth.untyped_closure = params.untyped_closure;
  result.truth.seed_edges = seed_edges;
  result.truth.planted.reserve(keys.size());
  result.truth.closure_edge.reserve(keys.size());
  for (std::uint64_t key : keys) {
    const auto u = static_cast<NodeIndex>(key >> 32);
    const auto v = static_cast<NodeIndex>(key & 0xffffffffULL);
    const std::int8_t dim = work.planted.at(key);
    TokenBag bag;
    if (dim != kUntyped) {
      const LexiconEntry* entry = lexicon.find(static_cast<Dimension>(dim));
      std::vector<const std::string*> pool;
      for (const std::string& w : entry->words) pool.push_back(&w);
      for (std::size_t i = 0; i < params.words_per_edge; ++i) {
        add_tokens(bag, *pool[words.below(pool.size())]);
      }
      result.truth.planted.emplace_back(static_cast<Dimension>(dim));
    } else {
      result.truth.planted.emplace_back(std::nullopt);
    }
    for (std::size_t i = 0; i < params.noise_words_per_edge && !noise.empty(); ++i) {
      add_tokens(bag, noise[words.below(noise.size())]);
    }
    result.truth.closure_edge.push_back(
        std::binary_search(work.closure_keys.begin(), work.closure_keys.end(), key));
    builder.add_tokens(u, v, bag);
  }
  result.graph = std::move(builder).build();
  return result;
}

SynthParams demo_synth_params() {
  SynthParams p;
  p.n_nodes = 5000;
  p.base_density = 7.0 / 5000.0;
  p.closure[static_cast<std::size_t>(Dimension::trust)] = 0.15;
  p.closure[static_cast<std::size_t>(Dimension::social_support)] = 0.06;
  p.untyped_fraction = 0.05;
  p.max_edges = 2000000;
  return p;
}

}  // namespace reldim
