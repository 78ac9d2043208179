#pragma once

#include "nfcocomo/metrics.hpp"
#include "nfcocomo/train.hpp"

namespace nfcocomo {

// Leave-one-out cross-validation: for every project, train from `initial` on
// the remaining N-1 projects and predict the held-out one; PRED/MMRE are
// aggregated over the held-out predictions. Folds are independent and may run
// on `jobs` threads; results are reduced in fold order, so the report does
// not depend on the thread count. Requires N >= 2.
EvaluationReport loocv(const Dataset& dataset, const ModelParams& initial,
                       const TrainConfig& config,
                       std::span<const double> levels,
                       const PredOptions& opts = {},
                       const std::string& label = "loocv", int jobs = 1);

}  // namespace nfcocomo
