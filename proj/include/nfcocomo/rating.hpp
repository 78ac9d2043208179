#pragma once

#include <optional>
#include <string_view>

namespace nfcocomo {

// Rating levels on the Very Low .. Extra High axis. The ordinal doubles as
// the numeric center of the level on the continuous rating scale, so
// VL = 1.0, L = 2.0, ..., XH = 6.0.
enum class RatingLevel : int {
  very_low = 1,
  low = 2,
  nominal = 3,
  high = 4,
  very_high = 5,
  extra_high = 6,
};

inline constexpr int kMinRatingOrdinal = 1;
inline constexpr int kMaxRatingOrdinal = 6;

constexpr int ordinal(RatingLevel level) { return static_cast<int>(level); }

constexpr double rating_center(RatingLevel level) {
  return static_cast<double>(ordinal(level));
}

// "VL", "L", "N", "H", "VH", "XH" for ordinals 1..6.
std::string_view level_abbreviation(int ordinal);

// "Very Low" .. "Extra High" for ordinals 1..6.
std::string_view level_name(int ordinal);

// Parses an abbreviation or full name, case-insensitively. Full names accept
// either a space or an underscore ("Very High", "very_high").
std::optional<RatingLevel> parse_rating_level(std::string_view token);

// Parses a rating cell: a linguistic level (mapped to its numeric center) or
// a finite numeric value on the rating axis.
std::optional<double> parse_rating_value(std::string_view token);

}  // namespace nfcocomo
