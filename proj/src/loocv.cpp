#include "nfcocomo/loocv.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "nfcocomo/errors.hpp"
#include "nfcocomo/predict.hpp"

namespace nfcocomo {

EvaluationReport loocv(const Dataset& dataset, const ModelParams& initial,
                       const TrainConfig& config,
                       std::span<const double> levels,
                       const PredOptions& opts, const std::string& label,
                       int jobs) {
  const std::size_t n = dataset.records.size();
  if (n < 2) {
    throw TrainError("leave-one-out needs at least 2 projects, got " +
                     std::to_string(n));
  }

  std::vector<double> estimates(n, 0.0);
  std::vector<double> actuals(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    actuals[i] = dataset.records[i].actual_effort;
  }

  const auto run_fold = [&](std::size_t held_out) {
    std::vector<ProjectRecord> fold;
    fold.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != held_out) fold.push_back(dataset.records[j]);
    }
    const TrainResult result = train(initial, fold, config);
    estimates[held_out] =
        predict_effort(result.params, dataset.records[held_out]);
  };

  const int max_jobs = std::max(1, jobs);
  if (max_jobs == 1 || n == 2) {
    for (std::size_t i = 0; i < n; ++i) run_fold(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(max_jobs), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= n) return;
          try {
            run_fold(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  return make_report(label, levels, estimates, actuals, opts);
}

}  // namespace nfcocomo
