#include "nfcocomo/predict.hpp"

#include <cmath>
#include <stdexcept>

#include "nfcocomo/errors.hpp"
#include "nfcocomo/fuzzy.hpp"
#include "nfcocomo/textio.hpp"

namespace nfcocomo {

Prediction predict_detailed(const ModelParams& params,
                            const ProjectRecord& project) {
  const std::size_t n_drivers = params.calibrations.size();
  if (project.ratings.size() != n_drivers) {
    throw std::domain_error("project '" + project.name + "' has " +
                            std::to_string(project.ratings.size()) +
                            " ratings, model has " + std::to_string(n_drivers) +
                            " drivers");
  }
  if (!(project.size > 0.0) || !std::isfinite(project.size)) {
    throw std::domain_error("project '" + project.name +
                            "' size must be positive (got " +
                            format_double(project.size) + ")");
  }

  const std::vector<ResolvedRule> rules =
      resolve_rules(params.rules, params.calibrations);
  const DnfisResult adjusted =
      dnfis_adjust(project.ratings, rules, params.calibrations);

  Prediction pred;
  pred.drivers.resize(n_drivers);

  double sf_sum = 0.0;
  double em_product = 1.0;
  for (std::size_t i = 0; i < n_drivers; ++i) {
    const DriverCalibration& calib = params.calibrations[i];
    DriverEvaluation& ev = pred.drivers[i];
    ev.raw_rating = project.ratings[i];
    ev.adjusted_rating = adjusted.adjusted[i];
    ev.value = nf_output(ev.adjusted_rating, calib);
    if (calib.driver.kind == DriverKind::scale_factor) {
      sf_sum += ev.value;
    } else {
      em_product *= ev.value;
    }
  }
  pred.scale_factor_sum = sf_sum;
  pred.multiplier_product = em_product;

  if (params.coeffs.family == CocomoFamily::cocomo_ii) {
    pred.exponent = params.coeffs.B + 0.01 * sf_sum;
    pred.effort = params.coeffs.A * std::pow(project.size, pred.exponent) * em_product;
  } else {
    std::optional<CocomoMode> mode =
        project.mode ? project.mode : params.coeffs.default_mode;
    if (!mode) {
      throw ConfigError("project '" + project.name +
                        "' has no development mode and the model sets no default");
    }
    auto it = params.coeffs.modes.find(*mode);
    if (it == params.coeffs.modes.end()) {
      throw ConfigError("missing coefficients for mode " +
                        std::string(mode_token(*mode)));
    }
    pred.mode = *mode;
    pred.exponent = it->second.b;
    pred.effort = it->second.a * std::pow(project.size, pred.exponent) * em_product;
  }
  return pred;
}

double predict_effort(const ModelParams& params, const ProjectRecord& project) {
  return predict_detailed(params, project).effort;
}

}  // namespace nfcocomo
