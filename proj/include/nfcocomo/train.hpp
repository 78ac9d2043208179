#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "nfcocomo/objective.hpp"

namespace nfcocomo {

struct TrainConfig {
  double learning_rate = 1e-3;
  int max_iterations = 5000;
  double tolerance = 1e-8;  // relative objective improvement per accepted step
  std::uint64_t seed = 0;   // threaded through dataset generation / loocv

  bool freeze_nf = false;
  bool freeze_dnfis = false;
  bool train_coefficients = false;

  // Monotone-descent safeguard: a step that does not decrease E is rejected
  // and the learning rate halved (floor below). Turning this off gives the
  // plain fixed-rate update.
  bool use_step_rejection = true;
  double learning_rate_floor = 1e-12;

  FreezeFlags freeze_flags() const {
    return {freeze_nf, freeze_dnfis, train_coefficients};
  }
};

struct TraceRow {
  int iteration = 0;      // 0 is the initial state
  double objective = 0.0; // candidate objective evaluated this iteration
  double grad_norm = 0.0; // L2 norm of dE/dP at the step's starting point
  bool accepted = false;
};

struct TrainTrace {
  std::vector<TraceRow> rows;
};

// CSV columns: iteration,objective,grad_norm,accepted
void write_trace_csv(std::ostream& out, const TrainTrace& trace);

struct TrainResult {
  ModelParams params;
  TrainTrace trace;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  int iterations = 0;
  std::string stop_reason;  // "converged" | "max_iterations" | "stalled"
};

// Projected gradient descent on the relative-error objective. Every accepted
// iterate is projected back onto the feasible set (monotone calibrations,
// floored EM values, rule deltas clamped to +-2.5), so the returned params
// satisfy the constraints exactly. Initial params must already be feasible.
// Throws TrainError naming the parameter block on non-finite values.
TrainResult train(const ModelParams& initial,
                  std::span<const ProjectRecord> projects,
                  const TrainConfig& config);

}  // namespace nfcocomo
