#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace nfcocomo {

// Scale factors enter the size exponent; effort multipliers scale effort
// directly.
enum class DriverKind { scale_factor, effort_multiplier };

// Effort direction of a driver: an increasing driver makes projects more
// expensive at higher ratings, a decreasing one cheaper. Unconstrained
// drivers carry no monotonicity constraint on their level values (the
// COCOMO'81 schedule multiplier is the stock example: its published values
// dip at Nominal and rise on both sides).
enum class Direction { increasing, decreasing, unconstrained };

struct DriverSpec {
  std::string id;
  DriverKind kind = DriverKind::effort_multiplier;
  Direction direction = Direction::increasing;
  int min_level = 1;  // contiguous defined range on the 1..6 rating axis
  int max_level = 6;

  int span() const { return max_level - min_level + 1; }
};

std::string_view kind_token(DriverKind kind);          // "sf" | "em"
std::string_view direction_token(Direction direction);  // "increasing" | ...
std::optional<DriverKind> parse_kind(std::string_view token);
std::optional<Direction> parse_direction(std::string_view token);

}  // namespace nfcocomo
