#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/graph.hpp"

namespace qwalk {

/// Per-arc amplitudes of a walk on a general graph, in the graph's arc order.
template <typename Scalar = double>
using ArcVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr std::size_t kDefaultGraphOracleCap = 400;

namespace detail {

inline void require_walkable(const Graph& g) {
  if (g.vertex_count() == 0) throw Error(ErrorKind::InvalidGraph, "graph has no vertices");
  if (g.has_isolated_vertex()) throw Error(ErrorKind::InvalidGraph, "graph has an isolated vertex; its coin is undefined");
}

inline void require_marked_fits(const Graph& g, const MarkedVertices& marked) {
  if (marked.vertex_count() != g.vertex_count())
    throw Error(ErrorKind::DimensionMismatch, "marked vertex set built for another graph");
}

template <typename Scalar>
void require_arc_vector(const Graph& g, const ArcVector<Scalar>& state) {
  if (static_cast<std::size_t>(state.size()) != g.arc_count())
    throw Error(ErrorKind::DimensionMismatch, "state has " + std::to_string(state.size()) +
                                                  " entries, graph has " + std::to_string(g.arc_count()) + " arcs");
}

}  // namespace detail

/// Equal superposition over all arcs, each amplitude 1/sqrt(deg(G)).
template <typename Scalar = double>
ArcVector<Scalar> graph_uniform_state(const Graph& g) {
  detail::require_walkable(g);
  return ArcVector<Scalar>::Constant(static_cast<Eigen::Index>(g.arc_count()),
                                     Scalar(1) / std::sqrt(Scalar(g.arc_count())));
}

template <typename Scalar>
void graph_apply_query(ArcVector<Scalar>& state, const Graph& g, const MarkedVertices& marked) {
  detail::require_arc_vector(g, state);
  for (int v : marked.ids())
    state.segment(g.arc_begin(v), g.degree(v)) *= Scalar(-1);
}

/// Effective coin: degree-d Grover diffusion a_j -> 2s/d - a_j at unmarked
/// vertices; -I (Akr) or a_j -> a_j - 2s/d (Grover) at marked vertices.
template <typename Scalar>
void graph_apply_coin(ArcVector<Scalar>& state, const Graph& g, const MarkedVertices& marked, CoinScheme scheme) {
  detail::require_arc_vector(g, state);
  detail::require_marked_fits(g, marked);
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto local = state.segment(g.arc_begin(v), g.degree(v));
    const Scalar mean2 = Scalar(2) * local.sum() / Scalar(g.degree(v));
    if (!marked.contains(v))
      local = (Scalar(mean2) - local.array()).matrix();
    else if (scheme == CoinScheme::Akr)
      local *= Scalar(-1);
    else
      local.array() -= mean2;
  }
}

/// Arc swap: amplitude of (i, j) moves to (j, i).
template <typename Scalar>
void graph_apply_shift(ArcVector<Scalar>& state, const Graph& g) {
  detail::require_arc_vector(g, state);
  ArcVector<Scalar> out(state.size());
  for (std::size_t a = 0; a < g.arc_count(); ++a) out[g.partner(a)] = state[a];
  state.swap(out);
}

template <typename Scalar>
void graph_step(ArcVector<Scalar>& state, const Graph& g, const MarkedVertices& marked, CoinScheme scheme) {
  graph_apply_coin(state, g, marked, scheme);
  graph_apply_shift(state, g);
}

template <typename Scalar>
Scalar graph_marked_probability(const ArcVector<Scalar>& state, const Graph& g, const MarkedVertices& marked) {
  Scalar p = 0;
  for (int v : marked.ids()) p += state.segment(g.arc_begin(v), g.degree(v)).squaredNorm();
  return p;
}

/// Dense S * Ccond * Q over the arc basis, assembled factor by factor.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> graph_dense_step_matrix(
    const Graph& g, const MarkedVertices& marked, CoinScheme scheme, std::size_t cap = kDefaultGraphOracleCap) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  detail::require_marked_fits(g, marked);
  const std::size_t arcs = g.arc_count();
  if (arcs > cap)
    throw Error(ErrorKind::OracleTooLarge, "dense graph oracle limited to " + std::to_string(cap) + " arcs, graph has " +
                                               std::to_string(arcs));
  const auto dim = static_cast<Eigen::Index>(arcs);
  Matrix query = Matrix::Identity(dim, dim);
  Matrix coin = Matrix::Identity(dim, dim);
  Matrix shift = Matrix::Zero(dim, dim);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto base = static_cast<Eigen::Index>(g.arc_begin(v));
    const int d = g.degree(v);
    if (marked.contains(v)) query.block(base, base, d, d) *= Scalar(-1);
    if (!marked.contains(v) || scheme == CoinScheme::Grover) {
      Matrix diffusion = Matrix::Constant(d, d, Scalar(2) / Scalar(d));
      diffusion.diagonal().array() -= Scalar(1);
      coin.block(base, base, d, d) = diffusion;
    }
  }
  for (std::size_t a = 0; a < arcs; ++a)
    shift(static_cast<Eigen::Index>(g.partner(a)), static_cast<Eigen::Index>(a)) = Scalar(1);
  return shift * coin * query;
}

}  // namespace qwalk
