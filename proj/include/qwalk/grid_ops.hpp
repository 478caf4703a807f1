#pragma once

#include <Eigen/Core>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/grid_state.hpp"
#include "qwalk/marked_set.hpp"

namespace qwalk {

namespace detail {

inline void require_same_grid(int state_n, const MarkedSet& marked) {
  if (marked.n() != state_n)
    throw Error(ErrorKind::DimensionMismatch, "marked set is for grid " + std::to_string(marked.n()) +
                                                  ", state is on grid " + std::to_string(state_n));
}

// Grover diffusion on four amplitudes: inversion about the average.
template <typename Scalar>
inline void diffuse(Scalar* a) noexcept {
  const Scalar half = (a[0] + a[1] + a[2] + a[3]) / Scalar(2);
  a[0] = half - a[0];
  a[1] = half - a[1];
  a[2] = half - a[2];
  a[3] = half - a[3];
}

// Effective coin of one cell: D unmarked, -I (Akr) or -D (Grover) marked.
template <typename Scalar>
inline void coin_cell(Scalar* a, bool is_marked, CoinScheme scheme) noexcept {
  if (!is_marked) {
    diffuse(a);
  } else if (scheme == CoinScheme::Akr) {
    a[0] = -a[0];
    a[1] = -a[1];
    a[2] = -a[2];
    a[3] = -a[3];
  } else {
    const Scalar half = (a[0] + a[1] + a[2] + a[3]) / Scalar(2);
    a[0] -= half;
    a[1] -= half;
    a[2] -= half;
    a[3] -= half;
  }
}

}  // namespace detail

/// Q: negates every amplitude of every marked cell.
template <typename Scalar>
void apply_query(GridState<Scalar>& state, const MarkedSet& marked) {
  detail::require_same_grid(state.n(), marked);
  for (const Cell& c : marked.cells()) state.cell(c.x, c.y) = -state.cell(c.x, c.y);
}

/// Effective per-cell coin: D at unmarked cells; at marked cells -I (Akr) or -D (Grover).
/// The marked sign flip of the query is part of this operator.
template <typename Scalar>
void apply_coin(GridState<Scalar>& state, CoinScheme scheme, const MarkedSet& marked) {
  detail::require_same_grid(state.n(), marked);
  Scalar* a = state.values().data();
  const auto cells = static_cast<std::size_t>(state.cell_count());
  for (std::size_t c = 0; c < cells; ++c) detail::coin_cell(a + 4 * c, marked.contains_index(c), scheme);
}

/// Coin that follows an explicit query: D at unmarked cells; at marked cells
/// I (Akr) or D (Grover). apply_conditional_coin after apply_query equals apply_coin.
template <typename Scalar>
void apply_conditional_coin(GridState<Scalar>& state, CoinScheme scheme, const MarkedSet& marked) {
  detail::require_same_grid(state.n(), marked);
  Scalar* a = state.values().data();
  const auto cells = static_cast<std::size_t>(state.cell_count());
  for (std::size_t c = 0; c < cells; ++c)
    if (!marked.contains_index(c) || scheme == CoinScheme::Grover) detail::diffuse(a + 4 * c);
}

/// Flip-flop shift: (x,y,Up)->(x,y-1,Down), (x,y,Down)->(x,y+1,Up),
/// (x,y,Left)->(x-1,y,Right), (x,y,Right)->(x+1,y,Left).
template <typename Scalar>
void apply_shift(GridState<Scalar>& state) {
  const int n = state.n();
  typename GridState<Scalar>::Array out(state.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      for (Direction d : kDirections)
        out[state.index(x + dx(d), y + dy(d), opposite(d))] = state(x, y, d);
    }
  state.values().swap(out);
}

/// Repeated stepping with one reusable scratch buffer. The coin and the shift
/// are fused into a single pass that writes the coined amplitudes straight to
/// their shifted positions.
template <typename Scalar = double>
class GridWalker {
 public:
  explicit GridWalker(int n) : n_(n), scratch_(4 * static_cast<Eigen::Index>(n) * n) {}

  void step(GridState<Scalar>& state, CoinScheme scheme, const MarkedSet& marked) {
    if (state.n() != n_)
      throw Error(ErrorKind::DimensionMismatch, "walker was built for grid " + std::to_string(n_));
    detail::require_same_grid(n_, marked);
    const Scalar* in = state.values().data();
    Scalar* out = scratch_.data();
    const std::size_t n = static_cast<std::size_t>(n_);
    const auto mask = marked.mask();
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t row = x * n;
      const std::size_t row_left = (x == 0 ? n - 1 : x - 1) * n;
      const std::size_t row_right = (x + 1 == n ? 0 : x + 1) * n;
      for (std::size_t y = 0; y < n; ++y) {
        const std::size_t y_up = y == 0 ? n - 1 : y - 1;
        const std::size_t y_down = y + 1 == n ? 0 : y + 1;
        Scalar a[4] = {in[4 * (row + y)], in[4 * (row + y) + 1], in[4 * (row + y) + 2],
                       in[4 * (row + y) + 3]};
        detail::coin_cell(a, mask[row + y] != 0, scheme);
        out[4 * (row + y_up) + 1] = a[0];
        out[4 * (row + y_down) + 0] = a[1];
        out[4 * (row_left + y) + 3] = a[2];
        out[4 * (row_right + y) + 2] = a[3];
      }
    }
    state.values().swap(scratch_);
  }

 private:
  int n_;
  typename GridState<Scalar>::Array scratch_;
};

/// One search step: shift after the effective coin. Equal to
/// shift(conditional_coin(query(state))).
template <typename Scalar>
void step(GridState<Scalar>& state, CoinScheme scheme, const MarkedSet& marked) {
  GridWalker<Scalar> walker(state.n());
  walker.step(state, scheme, marked);
}

}  // namespace qwalk
