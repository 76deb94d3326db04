#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reldim/correlation.hpp"
#include "reldim/dimension.hpp"
#include "reldim/lexicon.hpp"
#include "reldim/ratings.hpp"
#include "reldim/spectral.hpp"

namespace reldim {

enum class StopReason {
  none,             // internal node
  too_small,        // two or fewer members
  singleton_child,  // the bisection would isolate a single word
  correlation_drop, // children's weighted mean correlation fell below the node's
};

std::string_view to_string(StopReason r) noexcept;

struct ClusterNode {
  std::size_t id = 0;  // preorder index into ClusterTree::nodes
  std::size_t depth = 0;
  std::vector<std::size_t> members;  // word indices, ascending
  double mean_correlation = 1.0;     // mean over member pairs; 1 for < 2 members
  std::optional<std::size_t> first_child;
  std::optional<std::size_t> second_child;
  StopReason stop = StopReason::none;
  Polarity polarity = Polarity::none;

  bool is_leaf() const noexcept { return !first_child.has_value(); }
};

struct ClusterTree {
  std::vector<std::string> words;
  std::vector<ClusterNode> nodes;  // nodes[0] is the root

  const ClusterNode& root() const { return nodes.at(0); }
  std::vector<std::size_t> leaf_ids() const;
  // Word indices in leaf order, for Figure-style row reordering.
  std::vector<std::size_t> row_order() const;
};

struct BlockmodelOptions {
  EigenOptions eigen;
  double zero_band = 1e-9;
};

// Mean of M_ij over unordered member pairs; 1 for fewer than two members.
double mean_pairwise(const CorrelationMatrix& m, const std::vector<std::size_t>& members);

// Recursive two-way spectral partition of the correlation matrix, with the
// weighted-mean-correlation stopping rule.
ClusterTree blockmodel(const CorrelationMatrix& m, const BlockmodelOptions& options = {});

// Tags the root child with the higher grand-mean rating positive and the
// other negative, propagating to descendants. Equal means tag both children
// Polarity::both. Throws ValidationError if the root was never split.
ClusterTree assign_polarity(ClusterTree tree, const RatingMatrix& r);

// Indented text, one node per line with size, mean correlation, polarity and
// stop reason; leaves list their words. Byte-stable for a given tree.
void write_tree(std::ostream& out, const ClusterTree& tree);

// CSV of the correlation matrix with rows and columns in leaf order.
void write_ordered_matrix(std::ostream& out, const ClusterTree& tree, const CorrelationMatrix& m);

// Leaf id -> dimension, or nullopt to discard the leaf.
using LeafNaming = std::map<std::size_t, std::optional<Dimension>>;

// CSV with header "leaf,dimension"; dimension may be "discard".
LeafNaming read_naming(std::istream& in);

// Builds a lexicon from named leaves. Leaves sharing a dimension have their
// words unioned and polarities merged. Entries follow taxonomy order. Throws
// ValidationError, listing valid leaf ids, for ids that are not leaves.
Lexicon export_lexicon(const ClusterTree& tree, const LeafNaming& naming);

}  // namespace reldim
