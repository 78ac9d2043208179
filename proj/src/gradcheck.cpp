#include "nfcocomo/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "nfcocomo/rules.hpp"

namespace nfcocomo {

GradientCheckResult check_gradient(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> analytic_gradient, std::vector<double> point,
    std::span<const std::string> labels, double h) {
  GradientCheckResult result;
  for (std::size_t i = 0; i < point.size(); ++i) {
    const double saved = point[i];
    point[i] = saved + h;
    const double f_plus = f(point);
    point[i] = saved - h;
    const double f_minus = f(point);
    point[i] = saved;

    const double numeric = (f_plus - f_minus) / (2.0 * h);
    const double analytic = analytic_gradient[i];
    const double rel =
        std::abs(analytic - numeric) / std::max(std::abs(analytic), 1e-12);
    if (rel > result.max_rel_error || result.worst_parameter.empty()) {
      result.max_rel_error = rel;
      result.worst_parameter =
          i < labels.size() ? labels[i] : "param" + std::to_string(i);
      result.analytic = analytic;
      result.numeric = numeric;
    }
  }
  return result;
}

GradientCheckResult finite_difference_check(
    const ModelParams& params, std::span<const ProjectRecord> projects,
    double h, const FreezeFlags& flags) {
  const ParamLayout layout = make_layout(params, flags);

  // Ratings sitting exactly on an integer breakpoint are shifted a quarter
  // step into the cell. A nudge of only O(h) would leave memberships of size
  // h, whose gradient entries are too small for a central difference to
  // resolve above cancellation noise; a quarter step keeps every active
  // membership O(1) while staying clear of the neighbouring breakpoints.
  const double jitter = std::max(0.25, 2.0 * h);
  std::vector<ProjectRecord> jittered(projects.begin(), projects.end());
  for (ProjectRecord& project : jittered) {
    for (double& rating : project.ratings) {
      if (std::abs(rating - std::round(rating)) < 1e-9) rating += jitter;
    }
  }

  // Rule deltas sitting on the +-2.5 bound are pulled 2h inside it, so the
  // difference stencil stays within the admissible range.
  ModelParams point_params = params;
  std::vector<double> point = pack_params(point_params, layout);
  for (std::size_t p = 0; p < layout.size(); ++p) {
    if (layout.entries[p].kind != ParamRef::Kind::rule_delta) continue;
    const double bound = kMaxRuleDelta - 2.0 * h;
    point[p] = std::clamp(point[p], -bound, bound);
  }
  unpack_params(point, layout, point_params);

  const std::vector<double> analytic =
      gradient(point_params, jittered, layout);

  std::vector<std::string> labels;
  labels.reserve(layout.size());
  for (const ParamRef& ref : layout.entries) labels.push_back(ref.label);

  const auto f = [&](std::span<const double> values) {
    ModelParams probe = point_params;
    unpack_params(values, layout, probe);
    return objective(probe, jittered);
  };
  return check_gradient(f, analytic, point, labels, h);
}

}  // namespace nfcocomo
