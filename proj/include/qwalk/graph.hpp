#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace qwalk {

using Edge = std::pair<int, int>;

/// Simple undirected graph stored as arcs.
///
/// Neighbours of each vertex are sorted ascending; the arc (i, j) sits at
/// arc_begin(i) + rank of j among i's neighbours. partner(arc(i, j)) == arc(j, i).
/// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Throws InvalidGraph on self-loops, parallel edges or out-of-range ids.
  static Graph from_edges(int vertex_count, std::span<const Edge> edges);

  int vertex_count() const noexcept { return static_cast<int>(offsets_.size()) - 1; }
  std::size_t edge_count() const noexcept { return targets_.size() / 2; }
  /// deg(G): total degree, equal to the number of arcs.
  std::size_t arc_count() const noexcept { return targets_.size(); }

  int degree(int v) const noexcept { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  std::size_t arc_begin(int v) const noexcept { return offsets_[v]; }
  std::span<const int> neighbors(int v) const noexcept {
    return {targets_.data() + offsets_[v], static_cast<std::size_t>(degree(v))};
  }

  /// Arc index of (from, to); throws InvalidArgument if the vertices are not adjacent.
  std::size_t arc(int from, int to) const;
  std::size_t partner(std::size_t a) const noexcept { return partner_[a]; }
  int arc_source(std::size_t a) const noexcept { return sources_[a]; }
  int arc_target(std::size_t a) const noexcept { return targets_[a]; }

  bool has_isolated_vertex() const noexcept;
  /// Edges as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<int> targets_;
  std::vector<int> sources_;
  std::vector<std::size_t> partner_;
};

/// The n x n torus as a graph; vertex id x * n + y. Requires n >= 3.
Graph torus_graph(int n);

/// Marked vertex ids with O(1) membership. Duplicates are dropped.
class MarkedVertices {
 public:
  MarkedVertices() = default;
  MarkedVertices(int vertex_count, std::span<const int> ids);

  int vertex_count() const noexcept { return static_cast<int>(mask_.size()); }
  const std::vector<int>& ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool contains(int v) const noexcept { return mask_[v] != 0; }

 private:
  std::vector<int> ids_;
  std::vector<std::uint8_t> mask_;
};

/// Plain-text edge list: one "u v" pair per line, 0-based ids, '#' starts a
/// comment. The vertex count is one more than the largest id seen.
Graph read_edge_list(std::istream& in);
/// One vertex id per line; '#' comments and blank lines are skipped.
std::vector<int> read_vertex_ids(std::istream& in);

}  // namespace qwalk
