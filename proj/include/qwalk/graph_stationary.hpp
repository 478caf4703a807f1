#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "qwalk/errors.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/graph_walk.hpp"
#include "qwalk/stationary_grid.hpp"

namespace qwalk {

/// A witness graph together with its marked vertices and a Grover-coin
/// stationary state. `baseline` is the amplitude on every unmarked arc.
template <typename Scalar = double>
struct GraphWitness {
  Graph graph;
  MarkedVertices marked;
  ArcVector<Scalar> state;
  Scalar baseline{};
};

/// Shared-arc weights of the generic three-vertex construction. Marked vertex p
/// has m_p = sum of its two weights private unmarked neighbours, and the arc
/// pair between p and q carries -l_pq * a in both directions.
struct GenericThreeSpec {
  int l12 = 1;
  int l23 = 1;
  int l31 = 1;

  int m1() const noexcept { return l12 + l31; }
  int m2() const noexcept { return l12 + l23; }
  int m3() const noexcept { return l23 + l31; }
  void validate() const {
    if (l12 < 1 || l23 < 1 || l31 < 1) throw Error(ErrorKind::InvalidArgument, "arc weights must be at least 1");
  }
};

namespace detail {

// Marked vertices are 0..marked_edges' vertex range; vertex p gets
// private_counts[p] private neighbours, numbered consecutively after the
// marked ones. All private vertices are then closed into one cycle (a single
// edge when there are two) so every unmarked vertex has degree >= 1.
inline Graph make_witness_graph(int marked_count, const std::vector<Edge>& marked_edges,
                                const std::vector<int>& private_counts) {
  std::vector<Edge> edges = marked_edges;
  int next = marked_count;
  for (int p = 0; p < marked_count; ++p)
    for (int i = 0; i < private_counts[p]; ++i) edges.emplace_back(p, next++);
  const int first_private = marked_count, privates = next - marked_count;
  if (privates == 2) {
    edges.emplace_back(first_private, first_private + 1);
  } else if (privates >= 3) {
    for (int i = 0; i < privates; ++i) edges.emplace_back(first_private + i, first_private + (i + 1) % privates);
  }
  return Graph::from_edges(next, edges);
}

template <typename Scalar>
GraphWitness<Scalar> make_witness(Graph g, int marked_count, const std::vector<Edge>& weighted_edges,
                                  const std::vector<Scalar>& weights, Scalar unmarked_coefficient,
                                  std::optional<Scalar> a) {
  const Scalar unit = a ? *a : Scalar(1) / std::sqrt(Scalar(g.arc_count()));
  if (unit == Scalar(0)) throw Error(ErrorKind::InvalidArgument, "baseline amplitude must be nonzero");
  std::vector<int> ids(static_cast<std::size_t>(marked_count));
  for (int p = 0; p < marked_count; ++p) ids[p] = p;
  GraphWitness<Scalar> w{std::move(g), {}, {}, unmarked_coefficient * unit};
  w.marked = MarkedVertices(w.graph.vertex_count(), ids);
  w.state = ArcVector<Scalar>::Constant(static_cast<Eigen::Index>(w.graph.arc_count()), w.baseline);
  for (std::size_t e = 0; e < weighted_edges.size(); ++e) {
    const auto [p, q] = weighted_edges[e];
    w.state[w.graph.arc(p, q)] = -weights[e] * unit;
    w.state[w.graph.arc(q, p)] = -weights[e] * unit;
  }
  return w;
}

}  // namespace detail

/// Two adjacent marked vertices 0 and 1, each with k private neighbours
/// (degree k + 1). All arcs carry a except 0->1 and 1->0, which carry -k a.
/// `a` defaults to the uniform initial amplitude of the witness graph.
template <typename Scalar = double>
GraphWitness<Scalar> build_two_marked(int k, std::optional<Scalar> a = std::nullopt) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  const std::vector<Edge> marked_edges{{0, 1}};
  Graph g = detail::make_witness_graph(2, marked_edges, {k, k});
  return detail::make_witness<Scalar>(std::move(g), 2, marked_edges, {Scalar(k)}, Scalar(1), a);
}

/// Three mutually adjacent marked vertices with m = (l12 + l31, l12 + l23, l23 + l31)
/// private neighbours; the arc pair p<->q carries -l_pq a.
template <typename Scalar = double>
GraphWitness<Scalar> build_generic_three(const GenericThreeSpec& spec, std::optional<Scalar> a = std::nullopt) {
  spec.validate();
  const std::vector<Edge> marked_edges{{0, 1}, {1, 2}, {0, 2}};
  Graph g = detail::make_witness_graph(3, marked_edges, {spec.m1(), spec.m2(), spec.m3()});
  return detail::make_witness<Scalar>(std::move(g), 3, marked_edges,
                                      {Scalar(spec.l12), Scalar(spec.l23), Scalar(spec.l31)}, Scalar(1), a);
}

/// r marked vertices on a cycle (a single edge for r = 2), each with k private
/// neighbours. For r >= 3 each marked vertex shares its zero-sum between two
/// ring arcs: -(k/2) a when k is even; for odd k the pattern is scaled by two,
/// giving unmarked arcs 2a and ring arcs -k a.
template <typename Scalar = double>
GraphWitness<Scalar> build_symmetric_ring(int r, int k, std::optional<Scalar> a = std::nullopt) {
  if (r < 2) throw Error(ErrorKind::InvalidArgument, "a ring needs at least 2 marked vertices");
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "k must be at least 1");
  if (r == 2) return build_two_marked<Scalar>(k, a);

  std::vector<Edge> ring;
  for (int p = 0; p < r; ++p) ring.emplace_back(std::min(p, (p + 1) % r), std::max(p, (p + 1) % r));
  Graph g = detail::make_witness_graph(r, ring, std::vector<int>(static_cast<std::size_t>(r), k));
  const bool odd = k % 2 == 1;
  const Scalar ring_weight = odd ? Scalar(k) : Scalar(k / 2);
  return detail::make_witness<Scalar>(std::move(g), r, ring, std::vector<Scalar>(ring.size(), ring_weight),
                                      odd ? Scalar(2) : Scalar(1), a);
}

/// Graph analogue of the three stationarity conditions: equal unmarked arc
/// amplitudes, zero sum at marked vertices, amp(i->j) == amp(j->i).
template <typename Scalar>
ConditionReport check_graph_conditions(const Graph& g, const MarkedVertices& marked, const ArcVector<Scalar>& s,
                                       double tol = kStationaryTolerance) {
  detail::require_arc_vector(g, s);
  ConditionReport r{true, true, true};
  bool have_reference = false;
  Scalar reference{};
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto local = s.segment(g.arc_begin(v), g.degree(v));
    if (marked.contains(v)) {
      if (std::abs(local.sum()) > tol) r.zero_sum_marked = false;
      continue;
    }
    for (Eigen::Index i = 0; i < local.size(); ++i) {
      if (!have_reference) {
        reference = local[i];
        have_reference = true;
      } else if (std::abs(local[i] - reference) > tol) {
        r.uniform_unmarked = false;
      }
    }
  }
  for (std::size_t arc = 0; arc < g.arc_count(); ++arc)
    if (std::abs(s[arc] - s[g.partner(arc)]) > tol) r.facing_equal = false;
  return r;
}

template <typename Scalar>
ConditionReport check_graph_conditions(const GraphWitness<Scalar>& w, double tol = kStationaryTolerance) {
  return check_graph_conditions(w.graph, w.marked, w.state, tol);
}

template <typename Scalar>
Scalar graph_step_residual(const Graph& g, const MarkedVertices& marked, const ArcVector<Scalar>& s,
                           CoinScheme scheme = CoinScheme::Grover) {
  ArcVector<Scalar> next = s;
  graph_step(next, g, marked, scheme);
  return (next - s).norm();
}

/// Copy of the witness scaled so its unmarked amplitude becomes `baseline`.
template <typename Scalar>
GraphWitness<Scalar> rescaled(const GraphWitness<Scalar>& w, Scalar baseline) {
  GraphWitness<Scalar> out = w;
  out.state *= baseline / w.baseline;
  out.baseline = baseline;
  return out;
}

template <typename Scalar = double>
struct GraphDecomposition {
  ArcVector<Scalar> stationary;
  ArcVector<Scalar> moving;
  Scalar moving_norm2{};
};

/// psi0 = stationary + moving. Requires the witness baseline to equal psi0's amplitude.
template <typename Scalar>
GraphDecomposition<Scalar> decompose_graph_initial(const GraphWitness<Scalar>& w) {
  const ArcVector<Scalar> initial = graph_uniform_state<Scalar>(w.graph);
  const Scalar a0 = initial[0];
  if (std::abs(w.baseline - a0) > Scalar(1e-12) * a0)
    throw Error(ErrorKind::InvalidBaseline, "witness baseline does not match the initial amplitude 1/sqrt(deg(G))");
  GraphDecomposition<Scalar> d{w.state, initial - w.state, Scalar(0)};
  d.moving_norm2 = d.moving.squaredNorm();
  return d;
}

}  // namespace qwalk
