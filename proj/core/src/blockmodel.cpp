#include "reldim/blockmodel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "csv.hpp"
#include "reldim/error.hpp"

namespace reldim {

std::string_view to_string(StopReason r) noexcept {
  switch (r) {
    case StopReason::too_small:
      return "too_small";
    case StopReason::singleton_child:
      return "singleton_child";
    case StopReason::correlation_drop:
      return "correlation_drop";
    case StopReason::none:
      break;
  }
  return "split";
}

std::vector<std::size_t> ClusterTree::leaf_ids() const {
  std::vector<std::size_t> out;
  for (const ClusterNode& n : nodes) {
    if (n.is_leaf()) out.push_back(n.id);
  }
  return out;
}

std::vector<std::size_t> ClusterTree::row_order() const {
  // Preorder ids mean leaves appear left-to-right in id order.
  std::vector<std::size_t> order;
  for (std::size_t id : leaf_ids()) {
    const auto& m = nodes[id].members;
    order.insert(order.end(), m.begin(), m.end());
  }
  return order;
}

double mean_pairwise(const CorrelationMatrix& m, const std::vector<std::size_t>& members) {
  const std::size_t k = members.size();
  if (k < 2) return 1.0;
  double sum = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) sum += m(members[a], members[b]);
  }
  return sum / (0.5 * static_cast<double>(k) * static_cast<double>(k - 1));
}

namespace {

class Partitioner {
 public:
  Partitioner(const CorrelationMatrix& m, const BlockmodelOptions& options, ClusterTree& tree)
      : m_(m), options_(options), tree_(tree) {}

  std::size_t grow(std::vector<std::size_t> members, std::size_t depth) {
    const std::size_t id = tree_.nodes.size();
    tree_.nodes.emplace_back();
    {
      ClusterNode& node = tree_.nodes.back();
      node.id = id;
      node.depth = depth;
      node.mean_correlation = mean_pairwise(m_, members);
      node.members = std::move(members);
    }
    const std::vector<std::size_t>& mem = tree_.nodes[id].members;
    if (mem.size() <= 2) {
      tree_.nodes[id].stop = StopReason::too_small;
      return id;
    }

    auto [first, second] = bisect(mem);
    if (first.size() < 2 || second.size() < 2) {
      tree_.nodes[id].stop = StopReason::singleton_child;
      return id;
    }
    const double n = static_cast<double>(mem.size());
    const double children = (static_cast<double>(first.size()) * mean_pairwise(m_, first) +
                             static_cast<double>(second.size()) * mean_pairwise(m_, second)) /
                            n;
    if (children < tree_.nodes[id].mean_correlation) {
      tree_.nodes[id].stop = StopReason::correlation_drop;
      return id;
    }
    const std::size_t a = grow(std::move(first), depth + 1);
    const std::size_t b = grow(std::move(second), depth + 1);
    // tree_.nodes may have reallocated.
    tree_.nodes[id].first_child = a;
    tree_.nodes[id].second_child = b;
    return id;
  }

 private:
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> bisect(const std::vector<std::size_t>& mem) {
    const std::size_t k = mem.size();
    std::vector<double> w(k * k, 0.0);
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        if (a != b) w[a * k + b] = 0.5 * (m_(mem[a], mem[b]) + 1.0);
      }
    }
    const auto lap = laplacian(w, k);
    const auto f = fiedler_vector(lap, k, options_.eigen);
    const Bisection split = sign_split(f.vector, options_.zero_band);
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
    for (std::size_t i : split.first) out.first.push_back(mem[i]);
    for (std::size_t i : split.second) out.second.push_back(mem[i]);
    return out;
  }

  const CorrelationMatrix& m_;
  const BlockmodelOptions& options_;
  ClusterTree& tree_;
};

void propagate(ClusterTree& tree, std::size_t id, Polarity p) {
  ClusterNode& node = tree.nodes[id];
  node.polarity = p;
  if (node.first_child) propagate(tree, *node.first_child, p);
  if (node.second_child) propagate(tree, *node.second_child, p);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

ClusterTree blockmodel(const CorrelationMatrix& m, const BlockmodelOptions& options) {
  ClusterTree tree;
  tree.words = m.words();
  std::vector<std::size_t> all(m.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Partitioner(m, options, tree).grow(std::move(all), 0);
  return tree;
}

ClusterTree assign_polarity(ClusterTree tree, const RatingMatrix& r) {
  if (tree.nodes.empty() || tree.root().is_leaf()) {
    throw ValidationError("polarity needs a root with two children");
  }
  if (r.words() != tree.words) throw ValidationError("ratings do not match the tree's words");
  const std::size_t a = *tree.root().first_child;
  const std::size_t b = *tree.root().second_child;
  const double mean_a = r.grand_mean(tree.nodes[a].members);
  const double mean_b = r.grand_mean(tree.nodes[b].members);
  const double tol = 1e-12 * std::max({1.0, std::abs(mean_a), std::abs(mean_b)});
  if (std::abs(mean_a - mean_b) <= tol) {
    propagate(tree, a, Polarity::both);
    propagate(tree, b, Polarity::both);
  } else if (mean_a > mean_b) {
    propagate(tree, a, Polarity::positive);
    propagate(tree, b, Polarity::negative);
  } else {
    propagate(tree, a, Polarity::negative);
    propagate(tree, b, Polarity::positive);
  }
  return tree;
}

void write_tree(std::ostream& out, const ClusterTree& tree) {
  for (const ClusterNode& node : tree.nodes) {
    out << std::string(2 * node.depth, ' ') << "node " << node.id << " size=" << node.members.size()
        << " mean=" << format_double(node.mean_correlation) << " polarity=" << to_string(node.polarity);
    if (node.is_leaf()) {
      out << " leaf stop=" << to_string(node.stop) << " words=";
      for (std::size_t i = 0; i < node.members.size(); ++i) {
        out << (i ? " " : "") << tree.words[node.members[i]];
      }
    } else {
      out << " children=" << *node.first_child << ',' << *node.second_child;
    }
    out << '\n';
  }
}

void write_ordered_matrix(std::ostream& out, const ClusterTree& tree, const CorrelationMatrix& m) {
  const auto order = tree.row_order();
  out << "word";
  for (std::size_t j : order) out << ',' << m.words()[j];
  out << '\n';
  for (std::size_t i : order) {
    out << m.words()[i];
    for (std::size_t j : order) out << ',' << format_double(m(i, j));
    out << '\n';
  }
}

LeafNaming read_naming(std::istream& in) {
  LeafNaming naming;
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_line(in, line, line_no)) return naming;
  if (detail::split_csv_line(line, line_no) != std::vector<std::string>{"leaf", "dimension"}) {
    throw ParseError("expected header 'leaf,dimension'", line_no);
  }
  while (detail::next_line(in, line, line_no)) {
    const auto fields = detail::split_csv_line(line, line_no);
    if (fields.size() != 2) throw ParseError("expected 2 fields", line_no);
    std::size_t leaf = 0;
    try {
      std::size_t used = 0;
      leaf = std::stoul(fields[0], &used);
      if (used != fields[0].size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError("leaf id '" + fields[0] + "' is not a number", line_no);
    }
    std::optional<Dimension> dim;
    if (fields[1] != "discard") {
      dim = parse_dimension(fields[1]);
      if (!dim) {
        throw ParseError("'" + fields[1] + "' is not one of the ten dimensions or 'discard'", line_no);
      }
    }
    naming[leaf] = dim;
  }
  return naming;
}

Lexicon export_lexicon(const ClusterTree& tree, const LeafNaming& naming) {
  const auto leaves = tree.leaf_ids();
  for (const auto& [leaf, dim] : naming) {
    if (!std::binary_search(leaves.begin(), leaves.end(), leaf)) {
      std::string valid;
      for (std::size_t id : leaves) valid += (valid.empty() ? "" : ",") + std::to_string(id);
      throw ValidationError("leaf id " + std::to_string(leaf) + " is not a leaf; valid ids: " + valid);
    }
  }
  Lexicon lex;
  for (Dimension d : kAllDimensions) {
    LexiconEntry entry{d, Polarity::none, {}};
    bool named = false;
    for (const auto& [leaf, dim] : naming) {
      if (dim != d) continue;
      named = true;
      const ClusterNode& node = tree.nodes[leaf];
      entry.polarity = merge(entry.polarity, node.polarity);
      for (std::size_t w : node.members) entry.words.insert(tree.words[w]);
    }
    if (named) lex.add(std::move(entry));
  }
  return lex;
}

}  // namespace reldim
