#pragma once

#include <optional>
#include <string_view>

namespace qwalk {

/// Which coin pair the search walk uses.
///   Akr:    D at unmarked cells, -I at marked cells.
///   Grover: D at unmarked cells, -D at marked cells.
enum class CoinScheme { Akr, Grover };

constexpr std::string_view name_of(CoinScheme s) noexcept {
  return s == CoinScheme::Akr ? "akr" : "grover";
}

inline std::optional<CoinScheme> parse_coin_scheme(std::string_view s) {
  if (s == "akr") return CoinScheme::Akr;
  if (s == "grover") return CoinScheme::Grover;
  return std::nullopt;
}

}  // namespace qwalk
