#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace qwalk {

struct Cell {
  int x = 0;
  int y = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// Reduces a coordinate onto 0..n-1.
constexpr int wrap(int v, int n) noexcept {
  const int r = v % n;
  return r < 0 ? r + n : r;
}

/// Rectangular block of cells x..x+width-1 by y..y+height-1, taken modulo n.
struct BlockSpec {
  Cell origin;
  int width = 1;
  int height = 1;

  /// Throws InvalidArgument unless both sides are in 1..n (so cells stay distinct).
  void validate(int n) const;
  std::vector<Cell> cells(int n) const;
  int area() const noexcept { return width * height; }
};

/// Block of the given size placed at the grid centre: origin n/2 - side/2 on each axis.
BlockSpec centered_block(int n, int width, int height);

/// Set of marked torus cells with O(1) membership through a dense mask.
class MarkedSet {
 public:
  MarkedSet() = default;
  explicit MarkedSet(int n) : n_(n), mask_(static_cast<std::size_t>(n) * n, 0) {}
  /// Coordinates are reduced modulo n; duplicates are dropped.
  MarkedSet(int n, std::span<const Cell> cells);

  static MarkedSet from_block(int n, const BlockSpec& block);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }
  const std::vector<Cell>& cells() const noexcept { return cells_; }

  bool contains(int x, int y) const noexcept {
    return mask_[static_cast<std::size_t>(wrap(x, n_)) * n_ + wrap(y, n_)] != 0;
  }
  /// Membership by row-major cell index x * n + y.
  bool contains_index(std::size_t cell) const noexcept { return mask_[cell] != 0; }
  std::span<const std::uint8_t> mask() const noexcept { return mask_; }

  MarkedSet merged(const MarkedSet& other) const;
  MarkedSet translated(int shift_x, int shift_y) const;

 private:
  int n_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::uint8_t> mask_;
};

}  // namespace qwalk
