#pragma once

#include "nfcocomo/model.hpp"
#include "nfcocomo/project.hpp"

namespace nfcocomo {

// Per-driver trace of one prediction, for reports and what-if queries.
struct DriverEvaluation {
  double raw_rating = 0.0;
  double adjusted_rating = 0.0;  // after dependency rules and clamping
  double value = 0.0;            // the defuzzified driver value
};

struct Prediction {
  double effort = 0.0;  // staff-months
  std::vector<DriverEvaluation> drivers;
  double scale_factor_sum = 0.0;
  double multiplier_product = 1.0;
  double exponent = 0.0;
  std::optional<CocomoMode> mode;  // cocomo-81 only
};

// Full pipeline: dependency adjustment, per-driver defuzzification, family
// effort equation. The project's rating vector must align with the model's
// driver order.
Prediction predict_detailed(const ModelParams& params,
                            const ProjectRecord& project);

double predict_effort(const ModelParams& params, const ProjectRecord& project);

}  // namespace nfcocomo
