#include "nfcocomo/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "nfcocomo/predict.hpp"
#include "nfcocomo/textio.hpp"

namespace nfcocomo {

namespace {

void check_pairs(std::span<const double> estimates,
                 std::span<const double> actuals) {
  if (estimates.size() != actuals.size()) {
    throw std::domain_error("estimate/actual size mismatch: " +
                            std::to_string(estimates.size()) + " vs " +
                            std::to_string(actuals.size()));
  }
  if (estimates.empty()) {
    throw std::domain_error("no projects to evaluate");
  }
  for (std::size_t i = 0; i < actuals.size(); ++i) {
    if (!(actuals[i] > 0.0) || !std::isfinite(actuals[i])) {
      throw std::domain_error("actual effort at index " + std::to_string(i) +
                              " must be positive");
    }
  }
}

double relative_error(double estimate, double actual) {
  return std::abs((estimate - actual) / actual);
}

std::vector<double> sorted_levels(std::span<const double> levels) {
  std::vector<double> out(levels.begin(), levels.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> predict_all(const ModelParams& params,
                                const Dataset& dataset) {
  std::vector<double> estimates;
  estimates.reserve(dataset.records.size());
  for (const ProjectRecord& record : dataset.records) {
    estimates.push_back(predict_effort(params, record));
  }
  return estimates;
}

std::string pred_cell(const EvaluationReport::Row& row, int n) {
  return std::to_string(row.count) + "/" + std::to_string(n) + "  " +
         std::to_string(floor_percent(row.fraction)) + "%";
}

void pad_to(std::string& s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
}

}  // namespace

PredResult pred(std::span<const double> estimates,
                std::span<const double> actuals, double level_percent,
                const PredOptions& opts) {
  check_pairs(estimates, actuals);
  const double bound = level_percent / 100.0;
  PredResult result;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const double err = relative_error(estimates[i], actuals[i]);
    if (opts.inclusive ? err <= bound : err < bound) ++result.count;
  }
  result.fraction =
      static_cast<double>(result.count) / static_cast<double>(estimates.size());
  return result;
}

double mmre(std::span<const double> estimates,
            std::span<const double> actuals) {
  check_pairs(estimates, actuals);
  double total = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    total += relative_error(estimates[i], actuals[i]);
  }
  return total / static_cast<double>(estimates.size());
}

EvaluationReport make_report(const std::string& label,
                             std::span<const double> levels,
                             std::span<const double> estimates,
                             std::span<const double> actuals,
                             const PredOptions& opts) {
  EvaluationReport report;
  report.label = label;
  report.n = static_cast<int>(estimates.size());
  report.mmre = mmre(estimates, actuals);
  for (double level : sorted_levels(levels)) {
    const PredResult r = pred(estimates, actuals, level, opts);
    report.rows.push_back({level, r.count, r.fraction});
  }
  return report;
}

EvaluationReport evaluate_model(const ModelParams& params,
                                const Dataset& dataset,
                                std::span<const double> levels,
                                const PredOptions& opts,
                                const std::string& label) {
  std::vector<double> estimates = predict_all(params, dataset);
  std::vector<double> actuals;
  actuals.reserve(dataset.records.size());
  for (const ProjectRecord& record : dataset.records) {
    actuals.push_back(record.actual_effort);
  }
  return make_report(label, levels, estimates, actuals, opts);
}

double ModelComparison::delta(std::size_t row) const {
  return b.rows.at(row).fraction - a.rows.at(row).fraction;
}

ModelComparison compare_models(const Dataset& dataset, const ModelParams& a,
                               const ModelParams& b,
                               std::span<const double> levels,
                               const PredOptions& opts,
                               const std::string& label_a,
                               const std::string& label_b) {
  std::vector<double> actuals;
  actuals.reserve(dataset.records.size());
  for (const ProjectRecord& record : dataset.records) {
    actuals.push_back(record.actual_effort);
  }
  ModelComparison cmp;
  cmp.a = make_report(label_a, levels, predict_all(a, dataset), actuals, opts);
  cmp.b = make_report(label_b, levels, predict_all(b, dataset), actuals, opts);
  return cmp;
}

int floor_percent(double fraction) {
  return static_cast<int>(std::floor(fraction * 100.0 + 1e-9));
}

std::string format_report(const EvaluationReport& report) {
  std::ostringstream out;
  out << report.label << " (N=" << report.n << ")\n";
  for (const EvaluationReport::Row& row : report.rows) {
    out << "  PRED(" << format_double(row.level_percent) << "%): "
        << row.count << "/" << report.n << " = "
        << floor_percent(row.fraction) << "%\n";
  }
  out << "  MMRE: " << format_double(report.mmre) << "\n";
  return out.str();
}

std::string format_comparison(const ModelComparison& cmp) {
  const std::size_t rows = cmp.a.rows.size();
  std::vector<std::array<std::string, 4>> table;
  table.push_back({"metric", cmp.a.label, cmp.b.label, "improvement"});
  for (std::size_t i = 0; i < rows; ++i) {
    const int gain = floor_percent(cmp.b.rows[i].fraction) -
                     floor_percent(cmp.a.rows[i].fraction);
    table.push_back({"PRED(" + format_double(cmp.a.rows[i].level_percent) +
                         "%)",
                     pred_cell(cmp.a.rows[i], cmp.a.n),
                     pred_cell(cmp.b.rows[i], cmp.b.n),
                     (gain > 0 ? "+" : "") + std::to_string(gain) + "%"});
  }
  table.push_back(
      {"MMRE", format_double(cmp.a.mmre), format_double(cmp.b.mmre), ""});

  std::array<std::size_t, 4> widths{};
  for (const auto& row : table) {
    for (std::size_t c = 0; c < 4; ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  std::ostringstream out;
  out << "comparison over N=" << cmp.a.n << " projects\n";
  for (const auto& row : table) {
    std::string line;
    for (std::size_t c = 0; c < 4; ++c) {
      std::string cell = row[c];
      if (c + 1 < 4) pad_to(cell, widths[c] + 3);
      line += cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  return out.str();
}

void write_report_csv(std::ostream& out, const EvaluationReport& report) {
  out << "metric,level_percent,count,n,value\n";
  for (const EvaluationReport::Row& row : report.rows) {
    out << "pred," << format_double(row.level_percent) << ',' << row.count
        << ',' << report.n << ',' << format_double(row.fraction) << '\n';
  }
  out << "mmre,,," << report.n << ',' << format_double(report.mmre) << '\n';
}

void write_comparison_csv(std::ostream& out, const ModelComparison& cmp) {
  out << "metric,level_percent,a_count,b_count,n,a_fraction,b_fraction,"
         "a_percent,b_percent,improvement\n";
  for (std::size_t i = 0; i < cmp.a.rows.size(); ++i) {
    const EvaluationReport::Row& ra = cmp.a.rows[i];
    const EvaluationReport::Row& rb = cmp.b.rows[i];
    const int pa = floor_percent(ra.fraction);
    const int pb = floor_percent(rb.fraction);
    out << "pred," << format_double(ra.level_percent) << ',' << ra.count << ','
        << rb.count << ',' << cmp.a.n << ',' << format_double(ra.fraction)
        << ',' << format_double(rb.fraction) << ',' << pa << ',' << pb << ','
        << (pb - pa) << '\n';
  }
  out << "mmre,,,," << cmp.a.n << ',' << format_double(cmp.a.mmre) << ','
      << format_double(cmp.b.mmre) << ",,,\n";
}

void write_plot_data(std::ostream& out, const EvaluationReport& report) {
  out << "# " << report.label << " (N=" << report.n << ")\n";
  out << "# level_percent fraction\n";
  for (const EvaluationReport::Row& row : report.rows) {
    out << format_double(row.level_percent) << ' '
        << format_double(row.fraction) << '\n';
  }
}

void write_plot_data(std::ostream& out, const ModelComparison& cmp) {
  out << "# " << cmp.a.label << " vs " << cmp.b.label << " (N=" << cmp.a.n
      << ")\n";
  out << "# level_percent fraction_a fraction_b\n";
  for (std::size_t i = 0; i < cmp.a.rows.size(); ++i) {
    out << format_double(cmp.a.rows[i].level_percent) << ' '
        << format_double(cmp.a.rows[i].fraction) << ' '
        << format_double(cmp.b.rows[i].fraction) << '\n';
  }
}

}  // namespace nfcocomo
