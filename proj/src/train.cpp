#include "nfcocomo/train.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "nfcocomo/errors.hpp"
#include "nfcocomo/isotonic.hpp"
#include "nfcocomo/textio.hpp"

namespace nfcocomo {

namespace {

constexpr double kCoeffFloor = 1e-8;

double l2_norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

void check_finite(std::span<const double> v, const ParamLayout& layout,
                  const char* what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw TrainError(std::string(what) + " is non-finite at " +
                       layout.entries[i].label);
    }
  }
}

// Pulls a candidate point back onto the feasible set and re-syncs the packed
// vector with the projected parameters.
void project_feasible(ModelParams& params, const ParamLayout& layout,
                      std::vector<double>& theta) {
  for (DriverCalibration& calib : params.calibrations) {
    calib = project_monotone(calib);
  }
  for (DependencyRule& rule : params.rules) {
    rule.delta = std::clamp(rule.delta, -kMaxRuleDelta, kMaxRuleDelta);
  }
  params.coeffs.A = std::max(params.coeffs.A, kCoeffFloor);
  for (auto& [mode, mc] : params.coeffs.modes) {
    (void)mode;
    mc.a = std::max(mc.a, kCoeffFloor);
  }
  theta = pack_params(params, layout);
}

}  // namespace

void write_trace_csv(std::ostream& out, const TrainTrace& trace) {
  out << "iteration,objective,grad_norm,accepted\n";
  for (const TraceRow& row : trace.rows) {
    out << row.iteration << ',' << format_double(row.objective) << ','
        << format_double(row.grad_norm) << ',' << (row.accepted ? 1 : 0)
        << '\n';
  }
}

TrainResult train(const ModelParams& initial,
                  std::span<const ProjectRecord> projects,
                  const TrainConfig& config) {
  initial.validate();
  if (projects.empty()) {
    throw TrainError("training set is empty");
  }
  if (!(config.learning_rate > 0.0) || !std::isfinite(config.learning_rate)) {
    throw TrainError("learning rate must be positive");
  }

  const ParamLayout layout = make_layout(initial, config.freeze_flags());

  TrainResult result;
  result.params = initial;
  std::vector<double> theta = pack_params(result.params, layout);

  double current_e = objective(result.params, projects);
  if (!std::isfinite(current_e)) {
    throw TrainError("objective is non-finite at the initial parameters");
  }
  result.initial_objective = current_e;

  double rate = config.learning_rate;
  std::vector<double> grad;
  bool need_grad = true;
  double grad_norm = 0.0;

  if (layout.size() == 0) {
    result.final_objective = current_e;
    result.stop_reason = "converged";
    result.trace.rows.push_back({0, current_e, 0.0, true});
    return result;
  }

  grad = gradient(result.params, projects, layout);
  check_finite(grad, layout, "gradient");
  grad_norm = l2_norm(grad);
  need_grad = false;
  result.trace.rows.push_back({0, current_e, grad_norm, true});
  result.stop_reason = "max_iterations";

  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    if (need_grad) {
      grad = gradient(result.params, projects, layout);
      check_finite(grad, layout, "gradient");
      grad_norm = l2_norm(grad);
      need_grad = false;
    }
    if (grad_norm == 0.0) {
      result.stop_reason = "converged";
      break;
    }

    ModelParams candidate = result.params;
    std::vector<double> candidate_theta(theta.size());
    for (std::size_t p = 0; p < theta.size(); ++p) {
      candidate_theta[p] = theta[p] - rate * grad[p];
    }
    unpack_params(candidate_theta, layout, candidate);
    project_feasible(candidate, layout, candidate_theta);
    const double candidate_e = objective(candidate, projects);

    result.iterations = iter;
    const bool accept =
        !config.use_step_rejection
            ? std::isfinite(candidate_e)
            : (std::isfinite(candidate_e) && candidate_e < current_e);
    result.trace.rows.push_back({iter, candidate_e, grad_norm, accept});

    if (!config.use_step_rejection && !std::isfinite(candidate_e)) {
      throw TrainError("objective became non-finite at iteration " +
                       std::to_string(iter));
    }

    if (accept) {
      const double previous_e = current_e;
      result.params = std::move(candidate);
      theta = std::move(candidate_theta);
      current_e = candidate_e;
      need_grad = true;
      const double denom = std::max(previous_e, 1e-12);
      if (std::abs(previous_e - current_e) <= config.tolerance * denom) {
        result.stop_reason = "converged";
        break;
      }
    } else {
      rate *= 0.5;
      if (rate < config.learning_rate_floor) {
        result.stop_reason = "stalled";
        break;
      }
    }
  }

  result.final_objective = current_e;
  return result;
}

}  // namespace nfcocomo
