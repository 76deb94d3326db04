#include "reldim/graph.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "reldim/error.hpp"

namespace reldim {

namespace {

constexpr std::uint64_t pair_key(NodeIndex src, NodeIndex dst) noexcept {
  return (static_cast<std::uint64_t>(src) << 32) | dst;
}

}  // namespace

std::optional<NodeIndex> CommGraph::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

NodeIndex CommGraph::index(std::string_view id) const {
  if (auto n = find(id)) return *n;
  throw NotFoundError("unknown node '" + std::string(id) + "'");
}

std::span<const NodeIndex> CommGraph::out_neighbors(NodeIndex u) const {
  if (u >= node_count()) throw NotFoundError("node index out of range");
  return {out_targets_.data() + out_offsets_[u], out_offsets_[u + 1] - out_offsets_[u]};
}

std::span<const NodeIndex> CommGraph::in_neighbors(NodeIndex v) const {
  if (v >= node_count()) throw NotFoundError("node index out of range");
  return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::span<const EdgeId> CommGraph::out_edge_ids(NodeIndex u) const {
  if (u >= node_count()) throw NotFoundError("node index out of range");
  return {out_edges_.data() + out_offsets_[u], out_offsets_[u + 1] - out_offsets_[u]};
}

std::optional<EdgeId> CommGraph::find_edge(NodeIndex src, NodeIndex dst) const {
  const auto targets = out_neighbors(src);
  auto it = std::lower_bound(targets.begin(), targets.end(), dst);
  if (it == targets.end() || *it != dst) return std::nullopt;
  return out_edge_ids(src)[static_cast<std::size_t>(it - targets.begin())];
}

NodeIndex GraphBuilder::add_node(std::string_view id) {
  auto [it, inserted] = by_id_.try_emplace(std::string(id), static_cast<NodeIndex>(ids_.size()));
  if (inserted) ids_.emplace_back(id);
  return it->second;
}

bool GraphBuilder::add_message(std::string_view src, std::string_view dst, std::string_view text) {
  return add_tokens(src, dst, tokenize(text));
}

bool GraphBuilder::add_tokens(std::string_view src, std::string_view dst, const TokenBag& bag) {
  if (src == dst) {
    ++self_loops_;
    return false;
  }
  const NodeIndex s = add_node(src);
  const NodeIndex d = add_node(dst);
  return add_tokens(s, d, bag);
}

bool GraphBuilder::add_tokens(NodeIndex src, NodeIndex dst, const TokenBag& bag) {
  if (src == dst) {
    ++self_loops_;
    return false;
  }
  if (src >= ids_.size() || dst >= ids_.size()) throw NotFoundError("node index out of range");
  merge_into(bags_[pair_key(src, dst)], bag);
  return true;
}

CommGraph GraphBuilder::build() && {
  CommGraph g;
  const std::size_t n = ids_.size();
  g.ids_ = std::move(ids_);
  g.by_id_ = std::move(by_id_);

  std::vector<std::uint64_t> keys;
  keys.reserve(bags_.size());
  for (const auto& [key, bag] : bags_) keys.push_back(key);
  std::sort(keys.begin(), keys.end());

  g.edges_.reserve(keys.size());
  g.out_offsets_.assign(n + 1, 0);
  g.in_offsets_.assign(n + 1, 0);
  for (std::uint64_t key : keys) {
    const auto src = static_cast<NodeIndex>(key >> 32);
    const auto dst = static_cast<NodeIndex>(key & 0xffffffffULL);
    g.edges_.push_back(Edge{src, dst, std::move(bags_.at(key))});
    ++g.out_offsets_[src + 1];
    ++g.in_offsets_[dst + 1];
  }
  bags_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    g.out_offsets_[i + 1] += g.out_offsets_[i];
    g.in_offsets_[i + 1] += g.in_offsets_[i];
  }

  // Edges are sorted by (src, dst), so out-lists come out sorted.
  g.out_targets_.resize(g.edges_.size());
  g.out_edges_.resize(g.edges_.size());
  g.in_sources_.resize(g.edges_.size());
  std::vector<std::size_t> in_fill(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    const Edge& edge = g.edges_[e];
    g.out_targets_[e] = edge.dst;
    g.out_edges_[e] = e;
    // Iterating in src order keeps each in-list sorted too.
    g.in_sources_[in_fill[edge.dst]++] = edge.src;
  }
  return g;
}

bool equivalent(const CommGraph& a, const CommGraph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  using Row = std::tuple<std::string, std::string, TokenBag>;
  auto rows = [](const CommGraph& g) {
    std::vector<Row> out;
    out.reserve(g.edge_count());
    for (const Edge& e : g.edges()) out.emplace_back(g.id(e.src), g.id(e.dst), e.bag);
    std::sort(out.begin(), out.end());
    return out;
  };
  std::set<std::string> ids_a(a.ids().begin(), a.ids().end());
  std::set<std::string> ids_b(b.ids().begin(), b.ids().end());
  return ids_a == ids_b && rows(a) == rows(b);
}

std::vector<std::string> neighbors(const CommGraph& g, std::string_view u, Direction d) {
  std::vector<std::string> out;
  for (NodeIndex n : g.neighbors(g.index(u), d)) out.push_back(g.id(n));
  return out;
}

}  // namespace reldim
