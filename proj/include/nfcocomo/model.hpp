#pragma once

#include <string_view>
#include <vector>

#include "nfcocomo/calibration.hpp"
#include "nfcocomo/cocomo.hpp"
#include "nfcocomo/rules.hpp"

namespace nfcocomo {

// The full parameter set: COCOMO coefficients, every driver's calibration,
// and the dependency rule base. Drivers keep the order of the table file
// they were loaded from; project rating vectors align to that order.
struct ModelParams {
  CocomoCoefficients coeffs;
  std::vector<DriverCalibration> calibrations;
  std::vector<DependencyRule> rules;

  int driver_count() const { return static_cast<int>(calibrations.size()); }
  int index_of(std::string_view id) const;  // -1 when absent
  const DriverCalibration* find(std::string_view id) const;

  // Checks every structural invariant: unique ids, valid level ranges,
  // positive EM level values, monotonicity per direction, resolvable rules,
  // family-consistent coefficients and driver kinds. Throws ConfigError.
  void validate() const;
};

}  // namespace nfcocomo
