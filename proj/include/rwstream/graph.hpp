#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <unordered_set>
#include <vector>

namespace rwstream {

struct Edge {
  uint32_t from = 0;
  uint32_t to = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A walk is the sequence (v_0, ..., v_L) of visited vertices.
using Walk = std::vector<uint32_t>;

// Simple directed graph over dense 0-based vertex ids. Self-loops are
// allowed, duplicate edges are not. Edge insertion order is preserved.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(uint32_t n);

  uint32_t vertex_count() const { return n_; }
  uint64_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<uint32_t>& out_neighbors(uint32_t u) const { return out_[u]; }
  uint32_t out_degree(uint32_t u) const { return static_cast<uint32_t>(out_[u].size()); }
  bool has_edge(uint32_t u, uint32_t v) const;
  bool has_dead_end() const;

  // Throws std::invalid_argument on out-of-range ids, DuplicateEdge on repeats.
  void add_edge(uint32_t u, uint32_t v);

  // Text format: first line "n", then one "u v" line per edge.
  static DirectedGraph read_edge_list(std::istream& in);
  void write_edge_list(std::ostream& out) const;

 private:
  uint64_t key(uint32_t u, uint32_t v) const {
    return static_cast<uint64_t>(u) * n_ + v;
  }

  uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<uint32_t>> out_;
  std::unordered_set<uint64_t> present_;
};

}  // namespace rwstream
