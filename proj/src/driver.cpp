#include "nfcocomo/driver.hpp"

#include "nfcocomo/textio.hpp"

namespace nfcocomo {

std::string_view kind_token(DriverKind kind) {
  return kind == DriverKind::scale_factor ? "sf" : "em";
}

std::string_view direction_token(Direction direction) {
  switch (direction) {
    case Direction::increasing: return "increasing";
    case Direction::decreasing: return "decreasing";
    case Direction::unconstrained: return "unconstrained";
  }
  return "?";
}

std::optional<DriverKind> parse_kind(std::string_view token) {
  std::string t = to_lower(trim(token));
  if (t == "sf" || t == "scale-factor") return DriverKind::scale_factor;
  if (t == "em" || t == "effort-multiplier") return DriverKind::effort_multiplier;
  return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view token) {
  std::string t = to_lower(trim(token));
  if (t == "increasing" || t == "inc") return Direction::increasing;
  if (t == "decreasing" || t == "dec") return Direction::decreasing;
  if (t == "unconstrained" || t == "free") return Direction::unconstrained;
  return std::nullopt;
}

}  // namespace nfcocomo
