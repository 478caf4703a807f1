#pragma once

#include <Eigen/Core>

#include <cmath>
#include <string>

#include "qwalk/direction.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/marked_set.hpp"

namespace qwalk {

/// Amplitudes of a walker on the n x n torus.
///
/// Storage is one flat Eigen array of length 4 n^2 in x-major order, then y,
/// then direction (Up, Down, Left, Right). The same ordering indexes the rows
/// and columns of the dense step oracle.
template <typename Scalar = double>
class GridState {
 public:
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  GridState() = default;
  explicit GridState(int n) : n_(n), amp_(Array::Zero(4 * static_cast<Eigen::Index>(n) * n)) {
    if (n < 1) throw Error(ErrorKind::InvalidSize, "grid side must be positive");
  }
  GridState(int n, Array amplitudes) : n_(n), amp_(std::move(amplitudes)) {
    if (amp_.size() != 4 * static_cast<Eigen::Index>(n) * n)
      throw Error(ErrorKind::DimensionMismatch,
                  "amplitude array has " + std::to_string(amp_.size()) + " entries, expected " +
                      std::to_string(4LL * n * n));
  }

  int n() const noexcept { return n_; }
  Eigen::Index cell_count() const noexcept { return static_cast<Eigen::Index>(n_) * n_; }
  Eigen::Index size() const noexcept { return amp_.size(); }

  Eigen::Index index(int x, int y, Direction d) const noexcept {
    return (static_cast<Eigen::Index>(wrap(x, n_)) * n_ + wrap(y, n_)) * 4 + index_of(d);
  }

  Scalar& operator()(int x, int y, Direction d) noexcept { return amp_[index(x, y, d)]; }
  const Scalar& operator()(int x, int y, Direction d) const noexcept { return amp_[index(x, y, d)]; }

  /// The four direction amplitudes of one cell.
  auto cell(int x, int y) noexcept { return amp_.template segment<4>(index(x, y, Direction::Up)); }
  auto cell(int x, int y) const noexcept {
    return amp_.template segment<4>(index(x, y, Direction::Up));
  }

  Array& values() noexcept { return amp_; }
  const Array& values() const noexcept { return amp_; }
  auto flat() const noexcept { return amp_.matrix(); }

  Scalar squared_norm() const { return amp_.square().sum(); }

  friend bool operator==(const GridState& a, const GridState& b) {
    return a.n_ == b.n_ && (a.amp_ == b.amp_).all();
  }

 private:
  int n_ = 0;
  Array amp_;
};

/// The unmarked-walk fixed point: every amplitude 1/sqrt(4N).
template <typename Scalar = double>
GridState<Scalar> uniform_state(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidSize, "grid side must be at least 2, got " + std::to_string(n));
  GridState<Scalar> s(n);
  s.values().setConstant(Scalar(1) / std::sqrt(Scalar(4) * Scalar(n) * Scalar(n)));
  return s;
}

/// Real inner product; throws DimensionMismatch on different grids.
template <typename Scalar>
Scalar overlap(const GridState<Scalar>& a, const GridState<Scalar>& b) {
  if (a.n() != b.n())
    throw Error(ErrorKind::DimensionMismatch, "overlap of states on grids " + std::to_string(a.n()) +
                                                  " and " + std::to_string(b.n()));
  return (a.values() * b.values()).sum();
}

template <typename Scalar>
Scalar marked_probability(const GridState<Scalar>& state, const MarkedSet& marked) {
  Scalar p = 0;
  for (const Cell& c : marked.cells()) p += state.cell(c.x, c.y).square().sum();
  return p;
}

/// Copy of the state moved by (shift_x, shift_y) on the torus.
template <typename Scalar>
GridState<Scalar> translated(const GridState<Scalar>& s, int shift_x, int shift_y) {
  GridState<Scalar> out(s.n());
  for (int x = 0; x < s.n(); ++x)
    for (int y = 0; y < s.n(); ++y) out.cell(x + shift_x, y + shift_y) = s.cell(x, y);
  return out;
}

}  // namespace qwalk
