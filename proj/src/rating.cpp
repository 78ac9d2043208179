#include "nfcocomo/rating.hpp"

#include <array>
#include <cmath>

#include "nfcocomo/textio.hpp"

namespace nfcocomo {

namespace {

constexpr std::array<std::string_view, 6> kAbbrev = {"VL", "L",  "N",
                                                     "H",  "VH", "XH"};
constexpr std::array<std::string_view, 6> kNames = {
    "Very Low", "Low", "Nominal", "High", "Very High", "Extra High"};

}  // namespace

std::string_view level_abbreviation(int ordinal) {
  return kAbbrev.at(static_cast<std::size_t>(ordinal - 1));
}

std::string_view level_name(int ordinal) {
  return kNames.at(static_cast<std::size_t>(ordinal - 1));
}

std::optional<RatingLevel> parse_rating_level(std::string_view token) {
  std::string t = to_lower(trim(token));
  for (char& c : t) {
    if (c == '_') c = ' ';
  }
  for (int i = 0; i < 6; ++i) {
    if (t == to_lower(kAbbrev[static_cast<std::size_t>(i)]) ||
        t == to_lower(kNames[static_cast<std::size_t>(i)])) {
      return static_cast<RatingLevel>(i + 1);
    }
  }
  return std::nullopt;
}

std::optional<double> parse_rating_value(std::string_view token) {
  if (auto level = parse_rating_level(token)) return rating_center(*level);
  if (auto num = parse_double(token)) {
    if (std::isfinite(*num)) return *num;
  }
  return std::nullopt;
}

}  // namespace nfcocomo
