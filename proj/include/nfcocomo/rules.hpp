#pragma once

#include <span>
#include <string>
#include <vector>

#include "nfcocomo/calibration.hpp"

namespace nfcocomo {

// Hard limit on dependency-rule magnitudes: half the rating axis. Applied
// when rules are validated and re-applied after every learning step.
inline constexpr double kMaxRuleDelta = 2.5;

// One fuzzy dependency adjustment: IF every antecedent driver sits at its
// level (conjunctive), THEN shift the target driver's rating by delta scaled
// with the rule's firing strength.
struct DependencyRule {
  struct Antecedent {
    std::string driver;
    int level = 3;  // ordinal 1..6
  };

  std::vector<Antecedent> antecedents;
  std::string target;
  double delta = 0.0;  // signed shift on the rating axis, learnable

  std::string describe() const;  // "IF CPLX XH THEN ACAP -0.5"
};

// Rule with driver ids resolved to positions in the model's driver order.
struct ResolvedRule {
  std::vector<std::pair<int, int>> antecedents;  // (driver index, level)
  int target = -1;
  double delta = 0.0;
};

// Resolves ids against the calibrations' driver specs. Throws ConfigError on
// unknown drivers, a target that appears among its own antecedents, levels
// outside a driver's defined range, empty antecedents, or |delta| beyond
// kMaxRuleDelta.
std::vector<ResolvedRule> resolve_rules(
    const std::vector<DependencyRule>& rules,
    std::span<const DriverCalibration> calibrations);

}  // namespace nfcocomo
