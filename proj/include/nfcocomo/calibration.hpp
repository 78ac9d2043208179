#pragma once

#include <vector>

#include "nfcocomo/driver.hpp"

namespace nfcocomo {

// Learnable per-driver level values: scale-factor points for SF drivers,
// multipliers for EM drivers. level_values[0] belongs to driver.min_level.
struct DriverCalibration {
  DriverSpec driver;
  std::vector<double> level_values;

  // Exact table lookup at an integer level; out-of-range levels clamp to the
  // defined range.
  double value_at(int level) const;

  // True when level_values satisfy the driver's monotonic constraint
  // (non-strict, exact comparisons). Unconstrained drivers always pass.
  bool monotone_ok() const;
};

}  // namespace nfcocomo
