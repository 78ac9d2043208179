#pragma once

#include <array>
#include <span>
#include <vector>

#include "nfcocomo/calibration.hpp"
#include "nfcocomo/membership.hpp"
#include "nfcocomo/rules.hpp"

namespace nfcocomo {

// Firing strengths of the six level rules for one driver. Arrays are indexed
// by ordinal - 1; entries outside the family's defined range stay 0.
struct RuleActivation {
  MembershipFamily family;
  std::array<double, 6> raw{};
  std::array<double, 6> normalized{};
};

// Layers 1-3: membership values double as firing strengths (single-antecedent
// rules), then normalize to sum 1. The input rating is clamped to the
// family's defined range first.
RuleActivation fuzzify(double rating, const MembershipFamily& family);

// Layers 4-5: the driver value, a normalized-firing-weighted sum of the
// calibration's level values. Interpolates exactly at level centers and
// stays within [min level value, max level value].
double nf_output(double rating, const DriverCalibration& calib);

struct NfGradient {
  // d(output)/d(level value k), ordinal-1 indexed; equals the normalized
  // firing strength of level k.
  std::array<double, 6> level_gradients{};
  // d(output)/d(rating); piecewise constant, right-hand value at breakpoints,
  // 0 outside the defined range (the shoulders are flat).
  double rating_gradient = 0.0;
};

NfGradient nf_output_gradient(double rating, const DriverCalibration& calib);

// Dependency adjustment of a full rating vector (one pass; firing strengths
// are evaluated on the raw input ratings).
struct DnfisResult {
  std::vector<double> adjusted;  // clamped adjusted ratings, model order
  std::vector<double> fires;     // firing strength per rule
  // Per driver: the unclamped adjusted value fell outside the defined range
  // (or exactly on its edge), so rule-delta gradients through it are 0.
  std::vector<bool> clamped;
};

DnfisResult dnfis_adjust(std::span<const double> ratings,
                         std::span<const ResolvedRule> rules,
                         std::span<const DriverCalibration> calibrations);

// d(adjusted rating of rule r's target)/d(delta_r): the firing strength when
// the target's adjustment is unclamped, else 0 (subgradient convention at
// the clamp boundary).
std::vector<double> dnfis_gradient(std::span<const double> ratings,
                                   std::span<const ResolvedRule> rules,
                                   std::span<const DriverCalibration> calibrations);

}  // namespace nfcocomo
