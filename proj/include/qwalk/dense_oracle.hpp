#pragma once

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/grid_state.hpp"
#include "qwalk/marked_set.hpp"

namespace qwalk {

inline constexpr int kDefaultGridOracleCap = 8;

/// Explicit 4N x 4N step matrix S * Ccond * Q, assembled from the three factors
/// independently of the structured kernel. Basis order is that of GridState:
/// x-major, then y, then (Up, Down, Left, Right).
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense_step_matrix(
    int n, CoinScheme scheme, const MarkedSet& marked, int cap = kDefaultGridOracleCap) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (n < 1) throw Error(ErrorKind::InvalidSize, "grid side must be positive");
  if (n > cap)
    throw Error(ErrorKind::OracleTooLarge,
                "dense oracle limited to n <= " + std::to_string(cap) + ", got " + std::to_string(n));
  if (marked.n() != n) throw Error(ErrorKind::DimensionMismatch, "marked set is for another grid");

  const Eigen::Index dim = 4 * static_cast<Eigen::Index>(n) * n;
  const GridState<Scalar> layout(n);

  Matrix query = Matrix::Identity(dim, dim);
  Matrix coin = Matrix::Identity(dim, dim);
  Matrix shift = Matrix::Zero(dim, dim);

  Matrix grover(4, 4);
  grover.setConstant(Scalar(0.5));
  grover.diagonal().setConstant(Scalar(-0.5));

  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const Eigen::Index base = layout.index(x, y, Direction::Up);
      const bool is_marked = marked.contains(x, y);
      if (is_marked) query.block(base, base, 4, 4) *= Scalar(-1);
      if (!is_marked || scheme == CoinScheme::Grover) coin.block(base, base, 4, 4) = grover;
      for (Direction d : kDirections)
        shift(layout.index(x + dx(d), y + dy(d), opposite(d)), layout.index(x, y, d)) = Scalar(1);
    }
  return shift * coin * query;
}

}  // namespace qwalk
