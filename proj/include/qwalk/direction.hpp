#pragma once

#include <array>
#include <string_view>

namespace qwalk {

/// Coin-register labels. The numeric order is the basis order used by every
/// flattened state and by the dense oracles.
enum class Direction : int { Up = 0, Down = 1, Left = 2, Right = 3 };

inline constexpr std::array<Direction, 4> kDirections = {Direction::Up, Direction::Down,
                                                         Direction::Left, Direction::Right};

constexpr Direction opposite(Direction d) noexcept {
  switch (d) {
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
    case Direction::Left: return Direction::Right;
    case Direction::Right: return Direction::Left;
  }
  return d;
}

// Right increments x, Down increments y.
constexpr int dx(Direction d) noexcept {
  return d == Direction::Right ? 1 : (d == Direction::Left ? -1 : 0);
}
constexpr int dy(Direction d) noexcept {
  return d == Direction::Down ? 1 : (d == Direction::Up ? -1 : 0);
}

constexpr int index_of(Direction d) noexcept { return static_cast<int>(d); }

constexpr std::string_view name_of(Direction d) noexcept {
  constexpr std::array<std::string_view, 4> names = {"U", "D", "L", "R"};
  return names[static_cast<int>(d)];
}

}  // namespace qwalk
