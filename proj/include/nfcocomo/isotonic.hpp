#pragma once

#include <span>
#include <vector>

#include "nfcocomo/calibration.hpp"

namespace nfcocomo {

// Least-squares isotonic fit (non-decreasing) by pool-adjacent-violators:
// the Euclidean projection onto the monotone cone. Idempotent.
std::vector<double> isotonic_non_decreasing(std::span<const double> values);

// Default floor for effort-multiplier level values; keeps the effort/value
// gradient term away from its singularity at 0.
inline constexpr double kEmFloor = 1e-4;

// Projects a calibration onto its feasible set: isotonic fit in the driver's
// direction (decreasing drivers project the reversed sequence), then EM level
// values are floored at em_floor. Unconstrained drivers only get the floor.
DriverCalibration project_monotone(const DriverCalibration& calib,
                                   double em_floor = kEmFloor);

}  // namespace nfcocomo
