#include "nfcocomo/objective.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "nfcocomo/errors.hpp"
#include "nfcocomo/fuzzy.hpp"
#include "nfcocomo/rating.hpp"
#include "nfcocomo/textio.hpp"

namespace nfcocomo {

namespace {

struct Forward {
  double effort = 0.0;
  std::vector<double> values;  // defuzzified driver values, model order
  std::optional<CocomoMode> mode;
  double a = 0.0;  // coefficient pair actually used
  double b = 0.0;
};

void check_record(const ModelParams& params, const ProjectRecord& project) {
  if (project.ratings.size() != params.calibrations.size()) {
    throw std::domain_error("project '" + project.name + "' has " +
                            std::to_string(project.ratings.size()) +
                            " ratings, model has " +
                            std::to_string(params.calibrations.size()) +
                            " drivers");
  }
  if (!(project.size > 0.0) || !std::isfinite(project.size)) {
    throw std::domain_error("project '" + project.name +
                            "' size must be positive (got " +
                            format_double(project.size) + ")");
  }
  if (!(project.actual_effort > 0.0) || !std::isfinite(project.actual_effort)) {
    throw std::domain_error("project '" + project.name +
                            "' actual effort must be positive (got " +
                            format_double(project.actual_effort) + ")");
  }
  if (!(project.weight >= 0.0) || !std::isfinite(project.weight)) {
    throw std::domain_error("project '" + project.name +
                            "' weight must be non-negative (got " +
                            format_double(project.weight) + ")");
  }
}

Forward run_forward(const ModelParams& params,
                    std::span<const ResolvedRule> rules,
                    const ProjectRecord& project) {
  check_record(params, project);
  const DnfisResult adj = dnfis_adjust(project.ratings, rules, params.calibrations);

  Forward fwd;
  fwd.values.resize(params.calibrations.size());
  double sf_sum = 0.0;
  double em_product = 1.0;
  for (std::size_t i = 0; i < params.calibrations.size(); ++i) {
    const DriverCalibration& calib = params.calibrations[i];
    fwd.values[i] = nf_output(adj.adjusted[i], calib);
    if (calib.driver.kind == DriverKind::scale_factor) {
      sf_sum += fwd.values[i];
    } else {
      em_product *= fwd.values[i];
    }
  }

  if (params.coeffs.family == CocomoFamily::cocomo_ii) {
    fwd.a = params.coeffs.A;
    fwd.b = params.coeffs.B + 0.01 * sf_sum;
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
    fwd.mode = *mode;
    fwd.a = it->second.a;
    fwd.b = it->second.b;
  }
  fwd.effort = fwd.a * std::pow(project.size, fwd.b) * em_product;
  return fwd;
}

}  // namespace

double objective(const ModelParams& params,
                 std::span<const ProjectRecord> projects) {
  const std::vector<ResolvedRule> rules =
      resolve_rules(params.rules, params.calibrations);

  std::vector<double> terms;
  terms.reserve(projects.size());
  bool all_finite = true;
  for (const ProjectRecord& project : projects) {
    const Forward fwd = run_forward(params, rules, project);
    const double rel = (fwd.effort - project.actual_effort) / project.actual_effort;
    const double term = 0.5 * project.weight * rel * rel;
    all_finite = all_finite && std::isfinite(term);
    terms.push_back(term);
  }
  // Sorting before summation makes the result independent of project order.
  if (all_finite) std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double term : terms) total += term;
  return total;
}

ParamLayout make_layout(const ModelParams& params, const FreezeFlags& flags) {
  ParamLayout layout;
  if (!flags.freeze_nf) {
    for (std::size_t i = 0; i < params.calibrations.size(); ++i) {
      const DriverCalibration& calib = params.calibrations[i];
      for (int j = 0; j < calib.driver.span(); ++j) {
        ParamRef ref;
        ref.kind = ParamRef::Kind::level_value;
        ref.driver = static_cast<int>(i);
        ref.level_index = j;
        ref.label = calib.driver.id + "[" +
                    std::string(level_abbreviation(calib.driver.min_level + j)) +
                    "]";
        layout.entries.push_back(std::move(ref));
      }
    }
  }
  if (!flags.freeze_dnfis) {
    for (std::size_t r = 0; r < params.rules.size(); ++r) {
      ParamRef ref;
      ref.kind = ParamRef::Kind::rule_delta;
      ref.rule = static_cast<int>(r);
      ref.label = "rule" + std::to_string(r + 1) + ".delta";
      layout.entries.push_back(std::move(ref));
    }
  }
  if (flags.train_coefficients) {
    if (params.coeffs.family == CocomoFamily::cocomo_ii) {
      ParamRef a;
      a.kind = ParamRef::Kind::coeff_a;
      a.label = "A";
      layout.entries.push_back(std::move(a));
      ParamRef b;
      b.kind = ParamRef::Kind::coeff_b;
      b.label = "B";
      layout.entries.push_back(std::move(b));
    } else {
      for (const auto& [mode, mc] : params.coeffs.modes) {
        (void)mc;
        ParamRef a;
        a.kind = ParamRef::Kind::mode_a;
        a.mode = mode;
        a.label = std::string(mode_token(mode)) + ".a";
        layout.entries.push_back(std::move(a));
        ParamRef b;
        b.kind = ParamRef::Kind::mode_b;
        b.mode = mode;
        b.label = std::string(mode_token(mode)) + ".b";
        layout.entries.push_back(std::move(b));
      }
    }
  }
  return layout;
}

std::vector<double> pack_params(const ModelParams& params,
                                const ParamLayout& layout) {
  std::vector<double> values;
  values.reserve(layout.size());
  for (const ParamRef& ref : layout.entries) {
    switch (ref.kind) {
      case ParamRef::Kind::level_value:
        values.push_back(
            params.calibrations.at(ref.driver).level_values.at(ref.level_index));
        break;
      case ParamRef::Kind::rule_delta:
        values.push_back(params.rules.at(ref.rule).delta);
        break;
      case ParamRef::Kind::coeff_a:
        values.push_back(params.coeffs.A);
        break;
      case ParamRef::Kind::coeff_b:
        values.push_back(params.coeffs.B);
        break;
      case ParamRef::Kind::mode_a:
        values.push_back(params.coeffs.modes.at(ref.mode).a);
        break;
      case ParamRef::Kind::mode_b:
        values.push_back(params.coeffs.modes.at(ref.mode).b);
        break;
    }
  }
  return values;
}

void unpack_params(std::span<const double> values, const ParamLayout& layout,
                   ModelParams& params) {
  if (values.size() != layout.size()) {
    throw std::domain_error("parameter vector has " +
                            std::to_string(values.size()) + " entries, layout " +
                            std::to_string(layout.size()));
  }
  for (std::size_t p = 0; p < layout.size(); ++p) {
    const ParamRef& ref = layout.entries[p];
    const double v = values[p];
    switch (ref.kind) {
      case ParamRef::Kind::level_value:
        params.calibrations.at(ref.driver).level_values.at(ref.level_index) = v;
        break;
      case ParamRef::Kind::rule_delta:
        params.rules.at(ref.rule).delta = v;
        break;
      case ParamRef::Kind::coeff_a:
        params.coeffs.A = v;
        break;
      case ParamRef::Kind::coeff_b:
        params.coeffs.B = v;
        break;
      case ParamRef::Kind::mode_a:
        params.coeffs.modes.at(ref.mode).a = v;
        break;
      case ParamRef::Kind::mode_b:
        params.coeffs.modes.at(ref.mode).b = v;
        break;
    }
  }
}

std::vector<double> gradient(const ModelParams& params,
                             std::span<const ProjectRecord> projects,
                             const ParamLayout& layout) {
  const std::vector<ResolvedRule> rules =
      resolve_rules(params.rules, params.calibrations);
  const std::size_t n_drivers = params.calibrations.size();

  // Layout positions by target, -1 for parameters not in the layout.
  std::vector<std::vector<int>> level_pos(n_drivers);
  for (std::size_t i = 0; i < n_drivers; ++i) {
    level_pos[i].assign(params.calibrations[i].driver.span(), -1);
  }
  std::vector<int> rule_pos(params.rules.size(), -1);
  int a_pos = -1;
  int b_pos = -1;
  std::map<CocomoMode, std::pair<int, int>> mode_pos;
  for (std::size_t p = 0; p < layout.size(); ++p) {
    const ParamRef& ref = layout.entries[p];
    switch (ref.kind) {
      case ParamRef::Kind::level_value:
        level_pos.at(ref.driver).at(ref.level_index) = static_cast<int>(p);
        break;
      case ParamRef::Kind::rule_delta:
        rule_pos.at(ref.rule) = static_cast<int>(p);
        break;
      case ParamRef::Kind::coeff_a:
        a_pos = static_cast<int>(p);
        break;
      case ParamRef::Kind::coeff_b:
        b_pos = static_cast<int>(p);
        break;
      case ParamRef::Kind::mode_a:
        mode_pos.try_emplace(ref.mode, -1, -1).first->second.first =
            static_cast<int>(p);
        break;
      case ParamRef::Kind::mode_b:
        mode_pos.try_emplace(ref.mode, -1, -1).first->second.second =
            static_cast<int>(p);
        break;
    }
  }

  std::vector<double> grad(layout.size(), 0.0);

  for (const ProjectRecord& project : projects) {
    const DnfisResult adj =
        dnfis_adjust(project.ratings, rules, params.calibrations);

    std::vector<NfGradient> nf_grads(n_drivers);
    Forward fwd = run_forward(params, rules, project);
    for (std::size_t i = 0; i < n_drivers; ++i) {
      nf_grads[i] = nf_output_gradient(adj.adjusted[i], params.calibrations[i]);
    }

    const double scale =
        project.weight * (fwd.effort - project.actual_effort) /
        (project.actual_effort * project.actual_effort);
    const double log_size = std::log(project.size);

    // dE_n/d(driver value) per driver.
    std::vector<double> d_effort_d_value(n_drivers);
    for (std::size_t i = 0; i < n_drivers; ++i) {
      if (params.calibrations[i].driver.kind == DriverKind::scale_factor) {
        d_effort_d_value[i] = 0.01 * log_size * fwd.effort;
      } else {
        if (fwd.values[i] == 0.0) {
          throw std::domain_error("driver " + params.calibrations[i].driver.id +
                                  " evaluated to 0 for project '" +
                                  project.name + "'");
        }
        d_effort_d_value[i] = fwd.effort / fwd.values[i];
      }
    }

    for (std::size_t i = 0; i < n_drivers; ++i) {
      const DriverSpec& spec = params.calibrations[i].driver;
      for (int j = 0; j < spec.span(); ++j) {
        const int pos = level_pos[i][j];
        if (pos < 0) continue;
        const double dvalue =
            nf_grads[i].level_gradients[spec.min_level + j - 1];
        grad[pos] += scale * d_effort_d_value[i] * dvalue;
      }
    }

    if (!rules.empty()) {
      const std::vector<double> d_adjusted_d_delta =
          dnfis_gradient(project.ratings, rules, params.calibrations);
      for (std::size_t r = 0; r < rules.size(); ++r) {
        const int pos = rule_pos[r];
        if (pos < 0) continue;
        const int target = rules[r].target;
        grad[pos] += scale * d_effort_d_value[target] *
                     nf_grads[target].rating_gradient * d_adjusted_d_delta[r];
      }
    }

    if (params.coeffs.family == CocomoFamily::cocomo_ii) {
      if (a_pos >= 0) grad[a_pos] += scale * fwd.effort / params.coeffs.A;
      if (b_pos >= 0) grad[b_pos] += scale * log_size * fwd.effort;
    } else if (fwd.mode) {
      auto it = mode_pos.find(*fwd.mode);
      if (it != mode_pos.end()) {
        if (it->second.first >= 0) {
          grad[it->second.first] += scale * fwd.effort / fwd.a;
        }
        if (it->second.second >= 0) {
          grad[it->second.second] += scale * log_size * fwd.effort;
        }
      }
    }
  }
  return grad;
}

}  // namespace nfcocomo
