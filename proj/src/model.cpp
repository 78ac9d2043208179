#include "nfcocomo/model.hpp"

#include <cmath>
#include <set>

#include "nfcocomo/errors.hpp"
#include "nfcocomo/rating.hpp"
#include "nfcocomo/textio.hpp"

namespace nfcocomo {

int ModelParams::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < calibrations.size(); ++i) {
    if (calibrations[i].driver.id == id) return static_cast<int>(i);
  }
  return -1;
}

const DriverCalibration* ModelParams::find(std::string_view id) const {
  int i = index_of(id);
  return i < 0 ? nullptr : &calibrations[static_cast<std::size_t>(i)];
}

void ModelParams::validate() const {
  std::set<std::string> seen;
  for (const DriverCalibration& calib : calibrations) {
    const DriverSpec& spec = calib.driver;
    if (spec.id.empty()) throw ConfigError("driver with empty id");
    if (!seen.insert(spec.id).second) {
      throw ConfigError("duplicate driver id '" + spec.id + "'");
    }
    if (spec.min_level < kMinRatingOrdinal || spec.max_level > kMaxRatingOrdinal ||
        spec.min_level > spec.max_level) {
      throw ConfigError("driver " + spec.id + " has invalid level range");
    }
    if (static_cast<int>(calib.level_values.size()) != spec.span()) {
      throw ConfigError("driver " + spec.id + " needs " +
                        std::to_string(spec.span()) + " level values, has " +
                        std::to_string(calib.level_values.size()));
    }
    for (double v : calib.level_values) {
      if (!std::isfinite(v)) {
        throw ConfigError("driver " + spec.id + " has a non-finite level value");
      }
      if (spec.kind == DriverKind::effort_multiplier && !(v > 0.0)) {
        throw ConfigError("driver " + spec.id +
                          " has a non-positive multiplier value " +
                          format_double(v));
      }
    }
    if (!calib.monotone_ok()) {
      throw ConfigError("driver " + spec.id +
                        " violates its monotonic constraint (" +
                        std::string(direction_token(spec.direction)) + ")");
    }
    if (coeffs.family == CocomoFamily::cocomo_81 &&
        spec.kind == DriverKind::scale_factor) {
      throw ConfigError("driver " + spec.id +
                        " is a scale factor, but cocomo-81 has none");
    }
  }

  if (coeffs.family == CocomoFamily::cocomo_ii) {
    if (!(coeffs.A > 0.0) || !std::isfinite(coeffs.A) || !std::isfinite(coeffs.B)) {
      throw ConfigError("cocomo-ii coefficients require A > 0 and finite B");
    }
  } else {
    if (coeffs.modes.empty()) {
      throw ConfigError("cocomo-81 model has no mode coefficients");
    }
    for (const auto& [mode, mc] : coeffs.modes) {
      if (!(mc.a > 0.0) || !std::isfinite(mc.a) || !std::isfinite(mc.b)) {
        throw ConfigError(std::string("mode ") + std::string(mode_token(mode)) +
                          " requires a > 0 and finite b");
      }
    }
    if (coeffs.default_mode && !coeffs.modes.contains(*coeffs.default_mode)) {
      throw ConfigError("default mode has no coefficients");
    }
  }

  resolve_rules(rules, calibrations);  // throws on broken rules
}

}  // namespace nfcocomo
