#include "qwalk/stationary_grid.hpp"

#include <string>

namespace qwalk {

namespace {

struct TilingSearch {
  int width;
  int height;
  std::size_t limit;
  std::vector<char> covered;
  Tiling current;
  std::vector<Tiling> found;

  bool is_covered(int x, int y) const { return covered[static_cast<std::size_t>(y) * width + x] != 0; }
  void set(int x, int y, char v) { covered[static_cast<std::size_t>(y) * width + x] = v; }

  void search(int from) {
    if (found.size() >= limit) return;
    int pos = from;
    while (pos < width * height && is_covered(pos % width, pos / width)) ++pos;
    if (pos == width * height) {
      found.push_back(current);
      return;
    }
    const int x = pos % width, y = pos / width;
    if (x + 1 < width && !is_covered(x + 1, y)) {
      set(x, y, 1), set(x + 1, y, 1);
      current.push_back({{x, y}, true});
      search(pos + 1);
      current.pop_back();
      set(x, y, 0), set(x + 1, y, 0);
    }
    if (y + 1 < height) {
      set(x, y, 1), set(x, y + 1, 1);
      current.push_back({{x, y}, false});
      search(pos + 1);
      current.pop_back();
      set(x, y, 0), set(x, y + 1, 0);
    }
  }
};

}  // namespace

std::vector<Tiling> enumerate_domino_tilings(int width, int height, std::size_t limit) {
  if (width < 1 || height < 1) throw Error(ErrorKind::InvalidArgument, "block sides must be positive");
  if ((width * height) % 2 != 0) return {};
  TilingSearch s{width, height, limit, std::vector<char>(static_cast<std::size_t>(width) * height, 0), {}, {}};
  s.search(0);
  return s.found;
}

void validate_tiling(const BlockSpec& block, std::span<const DominoPlacement> tiling) {
  std::vector<int> hits(static_cast<std::size_t>(block.width) * block.height, 0);
  auto hit = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= block.width || y >= block.height)
      throw Error(ErrorKind::InvalidTiling, "domino cell (" + std::to_string(x) + "," + std::to_string(y) +
                                                ") lies outside the block");
    if (++hits[static_cast<std::size_t>(y) * block.width + x] > 1)
      throw Error(ErrorKind::InvalidTiling,
                  "dominoes overlap at (" + std::to_string(x) + "," + std::to_string(y) + ")");
  };
  for (const DominoPlacement& p : tiling) {
    hit(p.offset.x, p.offset.y);
    hit(p.offset.x + (p.horizontal ? 1 : 0), p.offset.y + (p.horizontal ? 0 : 1));
  }
  for (std::size_t i = 0; i < hits.size(); ++i)
    if (hits[i] == 0)
      throw Error(ErrorKind::InvalidTiling, "tiling leaves cell (" + std::to_string(i % block.width) + "," +
                                                std::to_string(i / block.width) + ") uncovered");
}

}  // namespace qwalk
