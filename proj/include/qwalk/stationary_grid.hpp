#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/grid_ops.hpp"
#include "qwalk/grid_state.hpp"
#include "qwalk/marked_set.hpp"

namespace qwalk {

inline constexpr double kStationaryTolerance = 1e-12;

/// One 1x2 (horizontal) or 2x1 (vertical) domino, positioned by its low cell
/// relative to the block origin.
struct DominoPlacement {
  Cell offset;
  bool horizontal = true;
  friend bool operator==(const DominoPlacement&, const DominoPlacement&) = default;
};

using Tiling = std::vector<DominoPlacement>;

/// Every domino tiling of a width x height rectangle, in a fixed backtracking
/// order (first free cell in y-major order; horizontal tried before vertical).
/// Stops after `limit` tilings.
std::vector<Tiling> enumerate_domino_tilings(int width, int height, std::size_t limit = 100000);

/// Throws InvalidTiling unless the dominoes cover the block exactly once.
void validate_tiling(const BlockSpec& block, std::span<const DominoPlacement> tiling);

template <typename Scalar = double>
struct StationaryCandidate {
  GridState<Scalar> state;
  MarkedSet marked;
  Scalar baseline{};
};

struct ConditionReport {
  bool uniform_unmarked = false;  // every unmarked amplitude equal
  bool zero_sum_marked = false;   // amplitudes of each marked cell sum to zero
  bool facing_equal = false;      // amplitudes of adjacent cells pointing at each other agree
  bool all() const noexcept { return uniform_unmarked && zero_sum_marked && facing_equal; }
};

namespace detail {

template <typename Scalar>
void require_baseline(Scalar a) {
  if (a == Scalar(0)) throw Error(ErrorKind::InvalidArgument, "baseline amplitude must be nonzero");
}

// The two amplitudes of a domino that point at each other become -3a.
template <typename Scalar>
void place_domino(GridState<Scalar>& s, Cell low, bool horizontal, Scalar a) {
  const Direction d = horizontal ? Direction::Right : Direction::Down;
  s(low.x, low.y, d) = Scalar(-3) * a;
  s(low.x + dx(d), low.y + dy(d), opposite(d)) = Scalar(-3) * a;
}

}  // namespace detail

/// Stationary state for two adjacent marked cells: every amplitude a except
/// the pair's two facing amplitudes, which are -3a.
template <typename Scalar = double>
StationaryCandidate<Scalar> build_domino_state(int n, Cell cell, bool horizontal, Scalar a) {
  if (n < 2) throw Error(ErrorKind::InvalidSize, "grid side must be at least 2");
  detail::require_baseline(a);
  const BlockSpec block{cell, horizontal ? 2 : 1, horizontal ? 1 : 2};
  StationaryCandidate<Scalar> c{GridState<Scalar>(n), MarkedSet::from_block(n, block), a};
  c.state.values().setConstant(a);
  detail::place_domino(c.state, cell, horizontal, a);
  return c;
}

/// Superposition of domino states, one per placement of `tiling`.
template <typename Scalar = double>
StationaryCandidate<Scalar> build_block_tiling(int n, const BlockSpec& block, Scalar a,
                                               std::span<const DominoPlacement> tiling) {
  if (n < 2) throw Error(ErrorKind::InvalidSize, "grid side must be at least 2");
  detail::require_baseline(a);
  block.validate(n);
  validate_tiling(block, tiling);
  StationaryCandidate<Scalar> c{GridState<Scalar>(n), MarkedSet::from_block(n, block), a};
  c.state.values().setConstant(a);
  for (const DominoPlacement& p : tiling)
    detail::place_domino(c.state, Cell{block.origin.x + p.offset.x, block.origin.y + p.offset.y},
                         p.horizontal, a);
  return c;
}

/// Layer-peeling construction for a width x height block.
///
/// Each rectangular layer, from the perimeter inward, gets -a on the two
/// amplitudes pointing at its neighbours along the layer cycle and +a on the
/// two pointing into and out of the layer. Peeling continues while both sides
/// of the unprocessed rectangle are at least 2; a leftover 1 x even strip is
/// filled with dominoes from its low end. Odd x odd blocks have no such state
/// and throw OddOddImpossible.
template <typename Scalar = double>
StationaryCandidate<Scalar> build_block_layered(int n, const BlockSpec& block, Scalar a) {
  if (n < 2) throw Error(ErrorKind::InvalidSize, "grid side must be at least 2");
  detail::require_baseline(a);
  block.validate(n);
  if (block.width % 2 == 1 && block.height % 2 == 1)
    throw Error(ErrorKind::OddOddImpossible,
                "no layered stationary state for a " + std::to_string(block.width) + "x" +
                    std::to_string(block.height) +
                    " block: odd-times-odd blocks leave a single-cell remainder that cannot be filled");

  StationaryCandidate<Scalar> c{GridState<Scalar>(n), MarkedSet::from_block(n, block), a};
  c.state.values().setConstant(a);
  const Cell o = block.origin;

  int x0 = 0, y0 = 0, x1 = block.width - 1, y1 = block.height - 1;
  while (x1 - x0 >= 1 && y1 - y0 >= 1) {
    for (int lx = x0; lx <= x1; ++lx)
      for (int ly = y0; ly <= y1; ++ly) {
        const bool top_or_bottom = ly == y0 || ly == y1;
        const bool left_or_right = lx == x0 || lx == x1;
        if (!top_or_bottom && !left_or_right) continue;
        for (Direction d : kDirections) {
          const int tx = lx + dx(d), ty = ly + dy(d);
          const bool inside = tx >= x0 && tx <= x1 && ty >= y0 && ty <= y1;
          const bool along = dx(d) != 0 ? top_or_bottom : left_or_right;
          if (inside && along) c.state(o.x + lx, o.y + ly, d) = -a;
        }
      }
    ++x0, ++y0, --x1, --y1;
  }

  const int w = x1 - x0 + 1, h = y1 - y0 + 1;
  if (w == 1 && h > 0) {
    for (int ly = y0; ly < y1; ly += 2) detail::place_domino(c.state, Cell{o.x + x0, o.y + ly}, false, a);
  } else if (h == 1 && w > 0) {
    for (int lx = x0; lx < x1; lx += 2) detail::place_domino(c.state, Cell{o.x + lx, o.y + y0}, true, a);
  }
  return c;
}

/// Evaluates the three sufficient conditions for Grover-coin stationarity.
template <typename Scalar>
ConditionReport check_conditions(const GridState<Scalar>& s, const MarkedSet& marked,
                                 double tol = kStationaryTolerance) {
  ConditionReport r{true, true, true};
  const int n = s.n();
  bool have_reference = false;
  Scalar reference{};
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (marked.contains(x, y)) {
        if (std::abs(s.cell(x, y).sum()) > tol) r.zero_sum_marked = false;
      } else {
        for (Direction d : kDirections) {
          if (!have_reference) {
            reference = s(x, y, d);
            have_reference = true;
          } else if (std::abs(s(x, y, d) - reference) > tol) {
            r.uniform_unmarked = false;
          }
        }
      }
      if (std::abs(s(x, y, Direction::Right) - s(x + 1, y, Direction::Left)) > tol ||
          std::abs(s(x, y, Direction::Down) - s(x, y + 1, Direction::Up)) > tol)
        r.facing_equal = false;
    }
  return r;
}

template <typename Scalar>
ConditionReport check_conditions(const StationaryCandidate<Scalar>& c, double tol = kStationaryTolerance) {
  return check_conditions(c.state, c.marked, tol);
}

/// Euclidean norm of step(state) - state.
template <typename Scalar>
Scalar step_residual(const GridState<Scalar>& s, CoinScheme scheme, const MarkedSet& marked) {
  GridState<Scalar> next = s;
  step(next, scheme, marked);
  return std::sqrt((next.values() - s.values()).square().sum());
}

template <typename Scalar = double>
struct GridDecomposition {
  GridState<Scalar> stationary;
  GridState<Scalar> moving;
  Scalar moving_norm2{};
};

/// Splits the uniform initial state into the candidate plus the moving remainder.
/// The candidate's baseline must equal the initial amplitude 1/sqrt(4N).
template <typename Scalar = double>
GridDecomposition<Scalar> decompose_initial(int n, const StationaryCandidate<Scalar>& c) {
  if (c.state.n() != n) throw Error(ErrorKind::DimensionMismatch, "candidate lives on another grid");
  GridState<Scalar> initial = uniform_state<Scalar>(n);
  const Scalar a0 = initial.values()[0];
  if (std::abs(c.baseline - a0) > Scalar(1e-12) * a0)
    throw Error(ErrorKind::InvalidBaseline, "candidate baseline does not match the initial amplitude 1/sqrt(4N)");
  GridDecomposition<Scalar> out{c.state, GridState<Scalar>(n, initial.values() - c.state.values()), Scalar(0)};
  out.moving_norm2 = out.moving.squared_norm();
  return out;
}

}  // namespace qwalk
