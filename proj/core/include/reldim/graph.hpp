#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reldim/tokenize.hpp"

namespace reldim {

using NodeIndex = std::uint32_t;
using EdgeId = std::uint32_t;

enum class Direction { out, in };

struct Edge {
  NodeIndex src;
  NodeIndex dst;
  TokenBag bag;
};

// Directed communication graph with one token bag per ordered pair.
//
// Immutable once built. Node indexes are dense and follow first appearance
// in the input; edges are stored sorted by (src, dst) so EdgeIds are stable
// for a given node numbering. Adjacency lists are sorted by node index.
class CommGraph {
 public:
  CommGraph() = default;

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  const std::string& id(NodeIndex n) const { return ids_.at(n); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  std::optional<NodeIndex> find(std::string_view id) const;
  // Throws NotFoundError for unknown ids.
  NodeIndex index(std::string_view id) const;

  std::span<const NodeIndex> out_neighbors(NodeIndex u) const;
  std::span<const NodeIndex> in_neighbors(NodeIndex v) const;
  std::span<const NodeIndex> neighbors(NodeIndex u, Direction d) const {
    return d == Direction::out ? out_neighbors(u) : in_neighbors(u);
  }

  // Edge ids parallel to out_neighbors(u).
  std::span<const EdgeId> out_edge_ids(NodeIndex u) const;

  std::optional<EdgeId> find_edge(NodeIndex src, NodeIndex dst) const;
  bool has_edge(NodeIndex src, NodeIndex dst) const { return find_edge(src, dst).has_value(); }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

 private:
  friend class GraphBuilder;

  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> by_id_;
  std::vector<Edge> edges_;
  // CSR adjacency.
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeIndex> out_targets_;
  std::vector<EdgeId> out_edges_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeIndex> in_sources_;
};

// Single-writer accumulator for CommGraph.
class GraphBuilder {
 public:
  NodeIndex add_node(std::string_view id);

  // Records a message; returns false (and counts it) for self-loops.
  bool add_message(std::string_view src, std::string_view dst, std::string_view text);
  bool add_tokens(std::string_view src, std::string_view dst, const TokenBag& bag);
  bool add_tokens(NodeIndex src, NodeIndex dst, const TokenBag& bag);

  std::size_t self_loops_skipped() const noexcept { return self_loops_; }
  std::size_t node_count() const noexcept { return ids_.size(); }

  CommGraph build() &&;

 private:
  struct PairHash {
    std::size_t operator()(std::uint64_t k) const noexcept { return std::hash<std::uint64_t>{}(k); }
  };

  std::vector<std::string> ids_;
  std::unordered_map<std::string, NodeIndex> by_id_;
  std::unordered_map<std::uint64_t, TokenBag, PairHash> bags_;
  std::size_t self_loops_ = 0;
};

// Same node ids, same ordered pairs and same bags, independent of the
// internal node numbering.
bool equivalent(const CommGraph& a, const CommGraph& b);

// Γ_out(u) or Γ_in(u) by user id. Throws NotFoundError for unknown ids.
std::vector<std::string> neighbors(const CommGraph& g, std::string_view u, Direction d);

}  // namespace reldim
