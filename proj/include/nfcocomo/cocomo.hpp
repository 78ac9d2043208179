#pragma once

#include <map>
#include <optional>
#include <span>
#include <string_view>

namespace nfcocomo {

enum class CocomoFamily { cocomo_ii, cocomo_81 };

enum class CocomoMode { organic, semidetached, embedded };

struct ModeCoefficients {
  double a = 0.0;
  double b = 0.0;
};

struct CocomoCoefficients {
  CocomoFamily family = CocomoFamily::cocomo_ii;

  // cocomo-ii: effort = A * size^(B + 0.01 * sum SF) * prod EM
  double A = 2.94;
  double B = 0.91;

  // cocomo-81: effort = a_mode * size^b_mode * prod EM
  std::map<CocomoMode, ModeCoefficients> modes;
  std::optional<CocomoMode> default_mode;
};

std::string_view family_token(CocomoFamily family);  // "cocomo-ii" | "cocomo-81"
std::string_view mode_token(CocomoMode mode);
std::optional<CocomoFamily> parse_family(std::string_view token);
std::optional<CocomoMode> parse_mode(std::string_view token);

// COCOMO II post-architecture effort equation. The canonical model has 5
// scale factors and 17 multipliers; the equation itself accepts any counts.
// Throws std::domain_error naming the offending input on non-positive size
// or multiplier, or when coeffs belong to the wrong family.
double cocomo2_effort(double size, std::span<const double> scale_factors,
                      std::span<const double> multipliers,
                      const CocomoCoefficients& coeffs);

// Intermediate COCOMO'81 effort equation (mode-specific a * size^b * prod EM,
// canonically 15 multipliers). `mode` overrides coeffs.default_mode; a
// missing or unknown mode is a ConfigError.
double cocomo81_effort(double size, std::span<const double> multipliers,
                       const CocomoCoefficients& coeffs,
                       std::optional<CocomoMode> mode = std::nullopt);

}  // namespace nfcocomo
