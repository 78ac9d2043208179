#pragma once

#include <algorithm>

#include "nfcocomo/driver.hpp"

namespace nfcocomo {

// Triangular membership family over a contiguous range of rating levels.
// Interior levels get unit-spaced triangles centered on their ordinal; the
// two extreme levels are shoulder-shaped (flat outside the range). On the
// clamped axis the family is a partition of unity and each level's function
// peaks at exactly 1 on its own center and 0 on every other integer level.
struct MembershipFamily {
  int min_level = 1;
  int max_level = 6;

  int span() const { return max_level - min_level + 1; }
};

inline MembershipFamily family_for(const DriverSpec& spec) {
  return {spec.min_level, spec.max_level};
}

inline double clamp_rating(const MembershipFamily& f, double rating) {
  return std::clamp(rating, static_cast<double>(f.min_level),
                    static_cast<double>(f.max_level));
}

// Membership of `rating` in the fuzzy set of `level`. `level` must lie in
// the family's defined range.
inline double membership(const MembershipFamily& f, int level, double rating) {
  if (f.min_level == f.max_level) return 1.0;  // single level covers the axis
  const double c = static_cast<double>(level);
  if (level <= f.min_level) {
    if (rating <= c) return 1.0;
    if (rating >= c + 1.0) return 0.0;
    return (c + 1.0) - rating;
  }
  if (level >= f.max_level) {
    if (rating >= c) return 1.0;
    if (rating <= c - 1.0) return 0.0;
    return rating - (c - 1.0);
  }
  if (rating <= c - 1.0 || rating >= c + 1.0) return 0.0;
  if (rating <= c) return rating - (c - 1.0);
  return (c + 1.0) - rating;
}

// Derivative of membership w.r.t. the rating. Piecewise constant; at the
// triangle breakpoints (feet and apex) the right-hand value is used, so the
// slope at an apex is -1 and at a left foot +1.
inline double membership_slope(const MembershipFamily& f, int level,
                               double rating) {
  if (f.min_level == f.max_level) return 0.0;
  const double c = static_cast<double>(level);
  if (level <= f.min_level) {
    return (rating >= c && rating < c + 1.0) ? -1.0 : 0.0;
  }
  if (level >= f.max_level) {
    return (rating >= c - 1.0 && rating < c) ? 1.0 : 0.0;
  }
  if (rating >= c - 1.0 && rating < c) return 1.0;
  if (rating >= c && rating < c + 1.0) return -1.0;
  return 0.0;
}

}  // namespace nfcocomo
