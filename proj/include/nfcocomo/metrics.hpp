#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nfcocomo/dataset.hpp"

namespace nfcocomo {

struct PredOptions {
  // |relative error| == p/100 counts as within level p. Switch for strict <.
  bool inclusive = true;
};

struct PredResult {
  int count = 0;
  double fraction = 0.0;
};

// PRED(p) = k/N with k the number of projects whose absolute relative error
// is within p percent of the actual effort.
PredResult pred(std::span<const double> estimates,
                std::span<const double> actuals, double level_percent,
                const PredOptions& opts = {});

// Mean magnitude of relative error.
double mmre(std::span<const double> estimates,
            std::span<const double> actuals);

struct EvaluationReport {
  struct Row {
    double level_percent = 0.0;
    int count = 0;
    double fraction = 0.0;
  };

  std::string label;
  int n = 0;
  double mmre = 0.0;
  std::vector<Row> rows;  // ascending PRED levels
};

inline constexpr double kDefaultPredLevels[] = {20.0, 30.0, 50.0, 100.0};

EvaluationReport make_report(const std::string& label,
                             std::span<const double> levels,
                             std::span<const double> estimates,
                             std::span<const double> actuals,
                             const PredOptions& opts = {});

// Predicts every project with the model, then builds the PRED/MMRE report.
EvaluationReport evaluate_model(const ModelParams& params,
                                const Dataset& dataset,
                                std::span<const double> levels,
                                const PredOptions& opts = {},
                                const std::string& label = "model");

struct ModelComparison {
  EvaluationReport a;
  EvaluationReport b;

  // fraction_b - fraction_a at row i, full precision.
  double delta(std::size_t row) const;
};

ModelComparison compare_models(const Dataset& dataset, const ModelParams& a,
                               const ModelParams& b,
                               std::span<const double> levels,
                               const PredOptions& opts = {},
                               const std::string& label_a = "model A",
                               const std::string& label_b = "model B");

// Display convention for accuracy columns: percentages are truncated to whole
// percents (62/69 -> 89%), and improvement columns difference the truncated
// values.
int floor_percent(double fraction);

std::string format_report(const EvaluationReport& report);
std::string format_comparison(const ModelComparison& cmp);

void write_report_csv(std::ostream& out, const EvaluationReport& report);
void write_comparison_csv(std::ostream& out, const ModelComparison& cmp);

// gnuplot-friendly PRED curve data: "level fraction" per line (two fraction
// columns for a comparison).
void write_plot_data(std::ostream& out, const EvaluationReport& report);
void write_plot_data(std::ostream& out, const ModelComparison& cmp);

}  // namespace nfcocomo
