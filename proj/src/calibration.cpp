#include "nfcocomo/calibration.hpp"

#include <algorithm>

namespace nfcocomo {

double DriverCalibration::value_at(int level) const {
  int clamped = std::clamp(level, driver.min_level, driver.max_level);
  return level_values[static_cast<std::size_t>(clamped - driver.min_level)];
}

bool DriverCalibration::monotone_ok() const {
  if (driver.direction == Direction::unconstrained) return true;
  for (std::size_t i = 1; i < level_values.size(); ++i) {
    if (driver.direction == Direction::increasing) {
      if (level_values[i - 1] > level_values[i]) return false;
    } else {
      if (level_values[i - 1] < level_values[i]) return false;
    }
  }
  return true;
}

}  // namespace nfcocomo
