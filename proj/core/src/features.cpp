#include "reldim/features.hpp"

#include "reldim/error.hpp"

namespace reldim {

namespace {

// Calls fn(w, edge u->w, edge w->v) for every common neighbor w, merging the
// two sorted adjacency lists.
template <typename Fn>
void for_each_common(const CommGraph& g, NodeIndex u, NodeIndex v, Fn&& fn) {
  const auto out = g.out_neighbors(u);
  const auto out_ids = g.out_edge_ids(u);
  const auto in = g.in_neighbors(v);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < out.size() && j < in.size()) {
    if (out[i] < in[j]) {
      ++i;
    } else if (in[j] < out[i]) {
      ++j;
    } else {
      fn(out[i], out_ids[i]);
      ++i;
      ++j;
    }
  }
}

}  // namespace

std::size_t common_neighbor_count(const CommGraph& g, NodeIndex u, NodeIndex v) {
  std::size_t n = 0;
  for_each_common(g, u, v, [&](NodeIndex, EdgeId) { ++n; });
  return n;
}

double triangle_overlap(const CommGraph& g, NodeIndex u, NodeIndex v) {
  if (v >= g.node_count()) throw NotFoundError("node index out of range");
  const std::size_t out = g.out_neighbors(u).size();
  if (out == 0) return 0.0;
  return static_cast<double>(common_neighbor_count(g, u, v)) / static_cast<double>(out);
}

double triangle_overlap(const CommGraph& g, std::string_view u, std::string_view v) {
  return triangle_overlap(g, g.index(u), g.index(v));
}

std::uint64_t DimensionVector::total() const noexcept {
  std::uint64_t t = 0;
  for (std::uint32_t c : counts) t += c;
  return t;
}

DimensionVector dimension_vector(const CommGraph& g, const EdgeLabels& labels, NodeIndex u, NodeIndex v,
                                 DimensionSource source) {
  DimensionVector d;
  for_each_common(g, u, v, [&](NodeIndex w, EdgeId uw) {
    EdgeId e = uw;
    if (source == DimensionSource::second_edge) e = *g.find_edge(w, v);
    if (e >= labels.size()) {
      throw ConsistencyError("edge " + g.id(g.edge(e).src) + "->" + g.id(g.edge(e).dst) +
                             " has no label");
    }
    const auto& dim = labels[e].dimension;
    ++d.counts[dim ? *lexicon_slot(*dim) : kLexiconDimensionCount];
  });
  return d;
}

std::string_view to_string(FeatureSet s) noexcept {
  switch (s) {
    case FeatureSet::dimensions:
      return "dimensions";
    case FeatureSet::combined:
      return "combined";
    case FeatureSet::triangle_overlap:
      break;
  }
  return "triangle_overlap";
}

std::string_view display_name(FeatureSet s) noexcept {
  switch (s) {
    case FeatureSet::dimensions:
      return "Relationship dimensions";
    case FeatureSet::combined:
      return "All";
    case FeatureSet::triangle_overlap:
      break;
  }
  return "Triangle overlap";
}

std::vector<std::string> feature_names(FeatureSet s) {
  std::vector<std::string> names;
  if (s != FeatureSet::dimensions) names.emplace_back("triangle_overlap");
  if (s != FeatureSet::triangle_overlap) {
    for (Dimension d : kLexiconDimensions) names.emplace_back(to_string(d));
    names.emplace_back("untyped");
  }
  return names;
}

}  // namespace reldim
