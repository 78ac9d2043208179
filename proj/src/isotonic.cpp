#include "nfcocomo/isotonic.hpp"

#include <algorithm>

namespace nfcocomo {

std::vector<double> isotonic_non_decreasing(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> level(n);   // pooled mean per block
  std::vector<double> weight(n);  // block sizes
  std::vector<std::size_t> start(n);
  std::size_t blocks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    level[blocks] = values[i];
    weight[blocks] = 1.0;
    start[blocks] = i;
    ++blocks;
    while (blocks > 1 && level[blocks - 2] > level[blocks - 1]) {
      const double w = weight[blocks - 2] + weight[blocks - 1];
      level[blocks - 2] =
          (weight[blocks - 2] * level[blocks - 2] +
           weight[blocks - 1] * level[blocks - 1]) /
          w;
      weight[blocks - 2] = w;
      --blocks;
    }
  }
  std::vector<double> out(n);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t end = (b + 1 < blocks) ? start[b + 1] : n;
    for (std::size_t i = start[b]; i < end; ++i) out[i] = level[b];
  }
  return out;
}

DriverCalibration project_monotone(const DriverCalibration& calib,
                                   double em_floor) {
  DriverCalibration out = calib;
  if (calib.driver.direction == Direction::increasing) {
    out.level_values = isotonic_non_decreasing(calib.level_values);
  } else if (calib.driver.direction == Direction::decreasing) {
    std::vector<double> reversed(calib.level_values.rbegin(),
                                 calib.level_values.rend());
    std::vector<double> fitted = isotonic_non_decreasing(reversed);
    out.level_values.assign(fitted.rbegin(), fitted.rend());
  }
  if (calib.driver.kind == DriverKind::effort_multiplier) {
    for (double& v : out.level_values) v = std::max(v, em_floor);
  }
  return out;
}

}  // namespace nfcocomo
