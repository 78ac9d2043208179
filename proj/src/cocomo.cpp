#include "nfcocomo/cocomo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nfcocomo/errors.hpp"
#include "nfcocomo/textio.hpp"

namespace nfcocomo {

namespace {

void require_positive_size(double size, const char* op) {
  if (!(size > 0.0) || !std::isfinite(size)) {
    throw std::domain_error(std::string(op) + ": size must be positive (got " +
                            format_double(size) + ")");
  }
}

void require_positive_multipliers(std::span<const double> multipliers,
                                  const char* op) {
  for (std::size_t i = 0; i < multipliers.size(); ++i) {
    if (!(multipliers[i] > 0.0) || !std::isfinite(multipliers[i])) {
      throw std::domain_error(std::string(op) + ": effort multiplier " +
                              std::to_string(i + 1) + " must be positive (got " +
                              format_double(multipliers[i]) + ")");
    }
  }
}

}  // namespace

std::string_view family_token(CocomoFamily family) {
  return family == CocomoFamily::cocomo_ii ? "cocomo-ii" : "cocomo-81";
}

std::string_view mode_token(CocomoMode mode) {
  switch (mode) {
    case CocomoMode::organic: return "organic";
    case CocomoMode::semidetached: return "semidetached";
    case CocomoMode::embedded: return "embedded";
  }
  return "?";
}

std::optional<CocomoFamily> parse_family(std::string_view token) {
  std::string t = to_lower(trim(token));
  if (t == "cocomo-ii" || t == "cocomo2" || t == "cocomo-2") return CocomoFamily::cocomo_ii;
  if (t == "cocomo-81" || t == "cocomo81") return CocomoFamily::cocomo_81;
  return std::nullopt;
}

std::optional<CocomoMode> parse_mode(std::string_view token) {
  std::string t = to_lower(trim(token));
  if (t == "organic") return CocomoMode::organic;
  if (t == "semidetached" || t == "semi-detached") return CocomoMode::semidetached;
  if (t == "embedded") return CocomoMode::embedded;
  return std::nullopt;
}

double cocomo2_effort(double size, std::span<const double> scale_factors,
                      std::span<const double> multipliers,
                      const CocomoCoefficients& coeffs) {
  if (coeffs.family != CocomoFamily::cocomo_ii) {
    throw std::domain_error("cocomo2_effort: coefficients are not cocomo-ii");
  }
  require_positive_size(size, "cocomo2_effort");
  require_positive_multipliers(multipliers, "cocomo2_effort");

  double sf_sum = 0.0;
  for (double sf : scale_factors) sf_sum += sf;
  double em_product = 1.0;
  for (double em : multipliers) em_product *= em;

  return coeffs.A * std::pow(size, coeffs.B + 0.01 * sf_sum) * em_product;
}

double cocomo81_effort(double size, std::span<const double> multipliers,
                       const CocomoCoefficients& coeffs,
                       std::optional<CocomoMode> mode) {
  if (coeffs.family != CocomoFamily::cocomo_81) {
    throw std::domain_error("cocomo81_effort: coefficients are not cocomo-81");
  }
  require_positive_size(size, "cocomo81_effort");
  require_positive_multipliers(multipliers, "cocomo81_effort");

  std::optional<CocomoMode> selected = mode ? mode : coeffs.default_mode;
  if (!selected) {
    throw ConfigError("cocomo81_effort: no development mode selected");
  }
  auto it = coeffs.modes.find(*selected);
  if (it == coeffs.modes.end()) {
    throw ConfigError(std::string("cocomo81_effort: missing coefficients for mode ") +
                      std::string(mode_token(*selected)));
  }

  double em_product = 1.0;
  for (double em : multipliers) em_product *= em;

  return it->second.a * std::pow(size, it->second.b) * em_product;
}

}  // namespace nfcocomo
