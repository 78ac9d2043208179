#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nfcocomo/objective.hpp"

namespace nfcocomo {

struct GradientCheckResult {
  double max_rel_error = 0.0;
  std::string worst_parameter;
  double analytic = 0.0;
  double numeric = 0.0;
};

// Compares an analytic gradient against central differences of f at `point`:
// max over parameters of |analytic - numeric| / max(|analytic|, 1e-12).
GradientCheckResult check_gradient(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> analytic_gradient, std::vector<double> point,
    std::span<const std::string> labels, double h);

// Full-model gradient audit. Project ratings sitting exactly on a membership
// breakpoint are jittered a quarter step into the cell first, so the
// one-sided derivative convention does not show up as a false mismatch and
// every active membership stays large enough for the difference stencil to
// resolve; rule deltas on the +-2.5 bound are pulled just inside it so the
// stencil stays admissible.
GradientCheckResult finite_difference_check(
    const ModelParams& params, std::span<const ProjectRecord> projects,
    double h, const FreezeFlags& flags = {});

}  // namespace nfcocomo
