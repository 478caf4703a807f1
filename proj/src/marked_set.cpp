#include "qwalk/marked_set.hpp"

#include <algorithm>
#include <string>

#include "qwalk/errors.hpp"

namespace qwalk {

void BlockSpec::validate(int n) const {
  if (width < 1 || height < 1)
    throw Error(ErrorKind::InvalidArgument, "block sides must be positive");
  if (width > n || height > n)
    throw Error(ErrorKind::InvalidArgument, "block " + std::to_string(width) + "x" + std::to_string(height) +
                                                " overlaps itself on a grid of side " + std::to_string(n));
}

std::vector<Cell> BlockSpec::cells(int n) const {
  validate(n);
  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(area()));
  for (int i = 0; i < width; ++i)
    for (int j = 0; j < height; ++j) out.push_back({wrap(origin.x + i, n), wrap(origin.y + j, n)});
  return out;
}

BlockSpec centered_block(int n, int width, int height) {
  return BlockSpec{{n / 2 - width / 2, n / 2 - height / 2}, width, height};
}

MarkedSet::MarkedSet(int n, std::span<const Cell> cells) : MarkedSet(n) {
  if (n < 1) throw Error(ErrorKind::InvalidSize, "grid side must be positive");
  cells_.reserve(cells.size());
  for (const Cell& c : cells) {
    const Cell r{wrap(c.x, n), wrap(c.y, n)};
    auto& bit = mask_[static_cast<std::size_t>(r.x) * n + r.y];
    if (bit == 0) {
      bit = 1;
      cells_.push_back(r);
    }
  }
  std::sort(cells_.begin(), cells_.end());
}

MarkedSet MarkedSet::from_block(int n, const BlockSpec& block) {
  const auto cells = block.cells(n);
  return MarkedSet(n, cells);
}

MarkedSet MarkedSet::merged(const MarkedSet& other) const {
  if (other.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "merging marked sets of different grids");
  std::vector<Cell> all = cells_;
  all.insert(all.end(), other.cells_.begin(), other.cells_.end());
  return MarkedSet(n_, all);
}

MarkedSet MarkedSet::translated(int shift_x, int shift_y) const {
  std::vector<Cell> moved;
  moved.reserve(cells_.size());
  for (const Cell& c : cells_) moved.push_back({c.x + shift_x, c.y + shift_y});
  return MarkedSet(n_, moved);
}

}  // namespace qwalk
