#include "nfcocomo/rules.hpp"

#include <cmath>

#include "nfcocomo/errors.hpp"
#include "nfcocomo/rating.hpp"
#include "nfcocomo/textio.hpp"

namespace nfcocomo {

namespace {

// Rules being described may hold levels that validation is about to reject;
// fall back to the raw ordinal instead of indexing the token table with it.
std::string level_token(int ordinal) {
  if (ordinal >= 1 && ordinal <= 6) {
    return std::string(level_abbreviation(ordinal));
  }
  return std::to_string(ordinal);
}

}  // namespace

std::string DependencyRule::describe() const {
  std::string out = "IF";
  for (std::size_t i = 0; i < antecedents.size(); ++i) {
    if (i > 0) out += " AND";
    out += " " + antecedents[i].driver + " " + level_token(antecedents[i].level);
  }
  out += " THEN " + target + " " + format_double(delta);
  return out;
}

std::vector<ResolvedRule> resolve_rules(
    const std::vector<DependencyRule>& rules,
    std::span<const DriverCalibration> calibrations) {
  auto index_of = [&](const std::string& id) -> int {
    for (std::size_t i = 0; i < calibrations.size(); ++i) {
      if (calibrations[i].driver.id == id) return static_cast<int>(i);
    }
    return -1;
  };

  std::vector<ResolvedRule> resolved;
  resolved.reserve(rules.size());
  for (const DependencyRule& rule : rules) {
    ResolvedRule r;
    if (rule.antecedents.empty()) {
      throw ConfigError("rule '" + rule.describe() + "' has no antecedents");
    }
    if (!std::isfinite(rule.delta) || std::abs(rule.delta) > kMaxRuleDelta) {
      throw ConfigError("rule '" + rule.describe() + "' delta exceeds +-" +
                        format_double(kMaxRuleDelta));
    }
    r.target = index_of(rule.target);
    if (r.target < 0) {
      throw ConfigError("rule '" + rule.describe() + "' targets unknown driver '" +
                        rule.target + "'");
    }
    for (const auto& ante : rule.antecedents) {
      int idx = index_of(ante.driver);
      if (idx < 0) {
        throw ConfigError("rule '" + rule.describe() +
                          "' references unknown driver '" + ante.driver + "'");
      }
      if (idx == r.target) {
        throw ConfigError("rule '" + rule.describe() +
                          "' target appears among its antecedents");
      }
      const DriverSpec& spec = calibrations[static_cast<std::size_t>(idx)].driver;
      if (ante.level < spec.min_level || ante.level > spec.max_level) {
        throw ConfigError("rule '" + rule.describe() + "' level " +
                          level_token(ante.level) +
                          " is outside the defined range of " + ante.driver);
      }
      r.antecedents.emplace_back(idx, ante.level);
    }
    r.delta = rule.delta;
    resolved.push_back(std::move(r));
  }
  return resolved;
}

}  // namespace nfcocomo
