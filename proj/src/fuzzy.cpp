#include "nfcocomo/fuzzy.hpp"

#include <cassert>

namespace nfcocomo {

RuleActivation fuzzify(double rating, const MembershipFamily& family) {
  RuleActivation act;
  act.family = family;
  const double r = clamp_rating(family, rating);

  double total = 0.0;
  for (int level = family.min_level; level <= family.max_level; ++level) {
    double w = membership(family, level, r);
    act.raw[static_cast<std::size_t>(level - 1)] = w;
    total += w;
  }
  // The shoulder-capped triangles form a partition of unity on the clamped
  // axis, so a zero total means the family itself is broken.
  assert(total > 0.0 && "membership family does not cover its rating axis");
  for (int level = family.min_level; level <= family.max_level; ++level) {
    act.normalized[static_cast<std::size_t>(level - 1)] =
        act.raw[static_cast<std::size_t>(level - 1)] / total;
  }
  return act;
}

double nf_output(double rating, const DriverCalibration& calib) {
  const RuleActivation act = fuzzify(rating, family_for(calib.driver));
  double out = 0.0;
  for (int level = calib.driver.min_level; level <= calib.driver.max_level; ++level) {
    out += act.normalized[static_cast<std::size_t>(level - 1)] *
           calib.level_values[static_cast<std::size_t>(level - calib.driver.min_level)];
  }
  return out;
}

NfGradient nf_output_gradient(double rating, const DriverCalibration& calib) {
  const MembershipFamily family = family_for(calib.driver);
  const double r = clamp_rating(family, rating);

  // Quotient rule on sum(mu_k * CD_k) / sum(mu_j). With the partition of
  // unity the denominator is 1 and the slope sum 0, but the full form is the
  // exact derivative of what nf_output computes.
  double total = 0.0;
  double slope_total = 0.0;
  double weighted = 0.0;
  double weighted_slope = 0.0;
  for (int level = family.min_level; level <= family.max_level; ++level) {
    const double cd =
        calib.level_values[static_cast<std::size_t>(level - family.min_level)];
    const double mu = membership(family, level, r);
    const double dmu = membership_slope(family, level, r);
    total += mu;
    slope_total += dmu;
    weighted += mu * cd;
    weighted_slope += dmu * cd;
  }
  assert(total > 0.0);

  NfGradient grad;
  for (int level = family.min_level; level <= family.max_level; ++level) {
    grad.level_gradients[static_cast<std::size_t>(level - 1)] =
        membership(family, level, r) / total;
  }
  // Below the range the clamp is flat, so the composition's right-hand
  // derivative is 0. From min_level up the clamped evaluation point carries
  // the correct right-hand slopes (they vanish on the top shoulder).
  if (rating >= static_cast<double>(family.min_level)) {
    grad.rating_gradient =
        weighted_slope / total - weighted * slope_total / (total * total);
  }
  return grad;
}

namespace {

double rule_fire(const ResolvedRule& rule, std::span<const double> ratings,
                 std::span<const DriverCalibration> calibrations) {
  double fire = 1.0;
  for (const auto& [driver, level] : rule.antecedents) {
    const MembershipFamily family =
        family_for(calibrations[static_cast<std::size_t>(driver)].driver);
    fire *= membership(family, level,
                       clamp_rating(family, ratings[static_cast<std::size_t>(driver)]));
  }
  return fire;
}

}  // namespace

DnfisResult dnfis_adjust(std::span<const double> ratings,
                         std::span<const ResolvedRule> rules,
                         std::span<const DriverCalibration> calibrations) {
  DnfisResult result;
  result.fires.resize(rules.size(), 0.0);
  result.clamped.assign(calibrations.size(), false);

  std::vector<double> shift(calibrations.size(), 0.0);
  for (std::size_t r = 0; r < rules.size(); ++r) {
    result.fires[r] = rule_fire(rules[r], ratings, calibrations);
    shift[static_cast<std::size_t>(rules[r].target)] +=
        result.fires[r] * rules[r].delta;
  }

  result.adjusted.resize(calibrations.size());
  for (std::size_t i = 0; i < calibrations.size(); ++i) {
    const MembershipFamily family = family_for(calibrations[i].driver);
    const double raw = ratings[i] + shift[i];
    result.adjusted[i] = clamp_rating(family, raw);
    result.clamped[i] = raw <= static_cast<double>(family.min_level) ||
                        raw >= static_cast<double>(family.max_level);
  }
  return result;
}

std::vector<double> dnfis_gradient(std::span<const double> ratings,
                                   std::span<const ResolvedRule> rules,
                                   std::span<const DriverCalibration> calibrations) {
  const DnfisResult result = dnfis_adjust(ratings, rules, calibrations);
  std::vector<double> grads(rules.size(), 0.0);
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const bool clamped = result.clamped[static_cast<std::size_t>(rules[r].target)];
    grads[r] = clamped ? 0.0 : result.fires[r];
  }
  return grads;
}

}  // namespace nfcocomo
