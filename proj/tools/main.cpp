// Command-line front end: estimate, train, evaluate, compare, check.
// Exit codes: 0 success, 1 audit/validation/training failure, 2 usage/IO.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nfcocomo/dataset.hpp"
#include "nfcocomo/errors.hpp"
#include "nfcocomo/gradcheck.hpp"
#include "nfcocomo/loocv.hpp"
#include "nfcocomo/metrics.hpp"
#include "nfcocomo/model_io.hpp"
#include "nfcocomo/predict.hpp"
#include "nfcocomo/rating.hpp"
#include "nfcocomo/textio.hpp"
#include "nfcocomo/train.hpp"

namespace {

using namespace nfcocomo;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ModelParams load_model_checked(const std::string& path) {
  if (path.empty()) {
    throw UsageError(
        "no model file given (use --model or set NFCOCOMO_TABLE)");
  }
  return load_model(path);
}

std::string valid_driver_names(const ModelParams& params) {
  std::string names;
  for (const DriverCalibration& calib : params.calibrations) {
    if (!names.empty()) names += ", ";
    names += calib.driver.id;
  }
  return names;
}

int find_driver(const ModelParams& params, std::string_view id) {
  const std::string wanted = to_lower(id);
  for (std::size_t i = 0; i < params.calibrations.size(); ++i) {
    if (to_lower(params.calibrations[i].driver.id) == wanted) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

void write_text_file(const std::string& path, const std::string& content,
                     const std::string& what) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) {
    throw std::runtime_error("cannot write " + what + " '" + path + "'");
  }
}

struct TrainOptions {
  std::string rules_path;
  TrainConfig config;
};

void add_train_options(CLI::App* cmd, TrainOptions& opts) {
  cmd->add_option("--rate", opts.config.learning_rate, "learning rate")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--iterations", opts.config.max_iterations,
                  "maximum gradient iterations")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tolerance", opts.config.tolerance,
                  "relative improvement stopping threshold");
  cmd->add_option("--seed", opts.config.seed, "random seed");
  cmd->add_flag("--freeze-nf", opts.config.freeze_nf,
                "keep driver level values fixed");
  cmd->add_flag("--freeze-dnfis", opts.config.freeze_dnfis,
                "keep dependency-rule deltas fixed");
  cmd->add_flag("--train-coefficients", opts.config.train_coefficients,
                "also train the effort-equation coefficients");
  cmd->add_flag_callback(
      "--no-step-rejection",
      [&opts] { opts.config.use_step_rejection = false; },
      "take every gradient step instead of rejecting non-decreasing ones");
}

ModelParams load_model_with_rules(const std::string& model_path,
                                  const std::string& rules_path) {
  ModelParams params = load_model_checked(model_path);
  if (!rules_path.empty()) {
    std::vector<DependencyRule> extra = load_rules(rules_path);
    for (DependencyRule& rule : extra) {
      params.rules.push_back(std::move(rule));
    }
    params.validate();
  }
  return params;
}

std::vector<double> pred_levels_or_default(std::vector<double> levels) {
  if (levels.empty()) {
    levels.assign(std::begin(kDefaultPredLevels), std::end(kDefaultPredLevels));
  }
  for (double level : levels) {
    if (!(level > 0.0)) {
      throw UsageError("PRED levels must be positive percentages");
    }
  }
  return levels;
}

int run_estimate(const std::string& model_path, double size,
                 const std::string& mode_name,
                 const std::vector<std::string>& assignments) {
  const ModelParams params = load_model_checked(model_path);

  ProjectRecord record;
  record.name = "estimate";
  record.size = size;
  record.actual_effort = 1.0;  // unused by prediction
  record.ratings.assign(params.calibrations.size(),
                        rating_center(RatingLevel::nominal));

  if (!mode_name.empty()) {
    if (params.coeffs.family != CocomoFamily::cocomo_81) {
      throw UsageError("--mode only applies to cocomo-81 models");
    }
    const std::optional<CocomoMode> mode = parse_mode(mode_name);
    if (!mode) {
      throw UsageError("unknown mode '" + mode_name +
                       "' (organic, semidetached, embedded)");
    }
    record.mode = mode;
  }

  std::vector<bool> assigned(params.calibrations.size(), false);
  for (const std::string& token : assignments) {
    const std::size_t eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
      throw UsageError("bad assignment '" + token +
                       "', expected DRIVER=RATING");
    }
    const int index = find_driver(params, trim(token.substr(0, eq)));
    if (index < 0) {
      throw UsageError("unknown driver '" + token.substr(0, eq) +
                       "'; valid drivers: " + valid_driver_names(params));
    }
    if (assigned[static_cast<std::size_t>(index)]) {
      throw UsageError("driver " + params.calibrations[index].driver.id +
                       " assigned twice");
    }
    const std::optional<double> rating =
        parse_rating_value(trim(token.substr(eq + 1)));
    if (!rating) {
      throw UsageError("unrecognized rating '" + token.substr(eq + 1) +
                       "' for driver " +
                       params.calibrations[index].driver.id);
    }
    assigned[static_cast<std::size_t>(index)] = true;
    record.ratings[static_cast<std::size_t>(index)] = *rating;
  }

  std::string defaulted;
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (assigned[i]) continue;
    if (!defaulted.empty()) defaulted += ", ";
    defaulted += params.calibrations[i].driver.id;
  }
  if (!defaulted.empty()) {
    std::cerr << "warning: defaulting to Nominal: " << defaulted << "\n";
  }

  const Prediction prediction = predict_detailed(params, record);

  std::cout << "effort: " << format_double(prediction.effort)
            << " staff-months\n";
  std::cout << "size: " << format_double(size) << " KDSI\n";
  if (params.coeffs.family == CocomoFamily::cocomo_ii) {
    std::cout << "scale factor sum: "
              << format_double(prediction.scale_factor_sum) << "\n";
  } else if (prediction.mode) {
    std::cout << "mode: " << mode_token(*prediction.mode) << "\n";
  }
  std::cout << "size exponent: " << format_double(prediction.exponent) << "\n";
  std::cout << "multiplier product: "
            << format_double(prediction.multiplier_product) << "\n";

  std::size_t width = 6;
  for (const DriverCalibration& calib : params.calibrations) {
    width = std::max(width, calib.driver.id.size());
  }
  std::cout << "driver breakdown (rating -> adjusted -> value):\n";
  for (std::size_t i = 0; i < params.calibrations.size(); ++i) {
    const DriverEvaluation& ev = prediction.drivers[i];
    std::string id = params.calibrations[i].driver.id;
    id.append(width - id.size() + 2, ' ');
    std::cout << "  " << id << format_double(ev.raw_rating) << " -> "
              << format_double(ev.adjusted_rating) << " -> "
              << format_double(ev.value) << "\n";
  }
  return 0;
}

int run_train(const std::string& model_path, const std::string& data_path,
              const std::string& out_path, const std::string& trace_path,
              const TrainOptions& opts) {
  const ModelParams params =
      load_model_with_rules(model_path, opts.rules_path);
  const Dataset dataset = load_dataset(data_path, params);

  const TrainResult result = train(params, dataset.records, opts.config);

  save_model(result.params, out_path);
  if (!trace_path.empty()) {
    std::ostringstream trace;
    write_trace_csv(trace, result.trace);
    write_text_file(trace_path, trace.str(), "trace file");
  }

  const ParamLayout layout =
      make_layout(params, opts.config.freeze_flags());
  std::cout << "projects: " << dataset.size() << "\n";
  std::cout << "trainable parameters: " << layout.size() << "\n";
  std::cout << "initial E: " << format_double(result.initial_objective)
            << "\n";
  std::cout << "final E: " << format_double(result.final_objective) << "\n";
  std::cout << "iterations: " << result.iterations << " ("
            << result.stop_reason << ")\n";
  std::cout << "wrote " << out_path << "\n";
  if (!trace_path.empty()) std::cout << "wrote " << trace_path << "\n";

  if (result.stop_reason == "stalled") {
    std::cerr << "error: no decreasing step found at the learning-rate floor\n";
    return 1;
  }
  return 0;
}

struct EvalSideOptions {
  bool use_loocv = false;
  int jobs = 1;
};

EvaluationReport evaluate_side(const ModelParams& params,
                               const Dataset& dataset,
                               std::span<const double> levels,
                               const PredOptions& pred_opts,
                               const std::string& label,
                               const EvalSideOptions& side,
                               const TrainOptions& train_opts) {
  if (!side.use_loocv) {
    return evaluate_model(params, dataset, levels, pred_opts, label);
  }
  return loocv(dataset, params, train_opts.config, levels, pred_opts, label,
               side.jobs);
}

int run_evaluate(const std::string& model_path, const std::string& data_path,
                 std::vector<double> levels, bool strict,
                 const std::string& label, const EvalSideOptions& side,
                 const TrainOptions& train_opts,
                 const std::string& report_csv_path,
                 const std::string& plot_path) {
  const ModelParams params =
      load_model_with_rules(model_path, train_opts.rules_path);
  const Dataset dataset = load_dataset(data_path, params);
  levels = pred_levels_or_default(std::move(levels));
  const PredOptions pred_opts{!strict};

  const EvaluationReport report = evaluate_side(
      params, dataset, levels, pred_opts,
      label.empty() ? (side.use_loocv ? "loocv" : "model") : label, side,
      train_opts);

  std::cout << format_report(report);
  if (!report_csv_path.empty()) {
    std::ostringstream csv;
    write_report_csv(csv, report);
    write_text_file(report_csv_path, csv.str(), "report CSV");
  }
  if (!plot_path.empty()) {
    std::ostringstream plot;
    write_plot_data(plot, report);
    write_text_file(plot_path, plot.str(), "plot data");
  }
  return 0;
}

int run_compare(const std::string& model_a_path,
                const std::string& model_b_path, const std::string& data_path,
                std::vector<double> levels, bool strict, std::string label_a,
                std::string label_b, const EvalSideOptions& side_a,
                const EvalSideOptions& side_b, const TrainOptions& train_opts,
                const std::string& report_csv_path,
                const std::string& plot_path) {
  const ModelParams model_a = load_model_checked(model_a_path);
  const ModelParams model_b = load_model_checked(model_b_path);
  const Dataset dataset_a = load_dataset(data_path, model_a);
  const Dataset dataset_b = load_dataset(data_path, model_b);
  levels = pred_levels_or_default(std::move(levels));
  const PredOptions pred_opts{!strict};

  if (label_a.empty()) label_a = side_a.use_loocv ? "model A (loocv)" : "model A";
  if (label_b.empty()) label_b = side_b.use_loocv ? "model B (loocv)" : "model B";

  ModelComparison cmp;
  cmp.a = evaluate_side(model_a, dataset_a, levels, pred_opts, label_a, side_a,
                        train_opts);
  cmp.b = evaluate_side(model_b, dataset_b, levels, pred_opts, label_b, side_b,
                        train_opts);

  std::cout << format_comparison(cmp);
  if (!report_csv_path.empty()) {
    std::ostringstream csv;
    write_comparison_csv(csv, cmp);
    write_text_file(report_csv_path, csv.str(), "report CSV");
  }
  if (!plot_path.empty()) {
    std::ostringstream plot;
    write_plot_data(plot, cmp);
    write_text_file(plot_path, plot.str(), "plot data");
  }
  return 0;
}

int run_check(const std::string& model_path, const std::string& data_path,
              double h, double threshold) {
  const ModelParams params = load_model_checked(model_path);

  bool ok = true;
  for (const DriverCalibration& calib : params.calibrations) {
    if (!calib.monotone_ok()) {
      std::cout << "monotonicity: driver " << calib.driver.id
                << " violates its " << direction_token(calib.driver.direction)
                << " constraint\n";
      ok = false;
    }
  }
  if (ok) {
    std::cout << "monotonicity: all drivers satisfy their direction"
                 " constraints\n";
  }

  const Dataset dataset = load_dataset(data_path, params);
  const GradientCheckResult result =
      finite_difference_check(params, dataset.records, h);
  std::cout << "gradient check: max relative error "
            << format_double(result.max_rel_error) << " at "
            << result.worst_parameter << " (analytic "
            << format_double(result.analytic) << ", central difference "
            << format_double(result.numeric) << ", h " << format_double(h)
            << ")\n";
  if (!(result.max_rel_error < threshold)) {
    std::cout << "gradient check exceeds threshold "
              << format_double(threshold) << "\n";
    ok = false;
  }

  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neuro-fuzzy COCOMO software cost estimation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nfcocomo 1.0.0");

  // estimate
  std::string est_model;
  double est_size = 0.0;
  std::string est_mode;
  std::vector<std::string> est_assignments;
  CLI::App* est = app.add_subcommand(
      "estimate", "estimate effort for one project from driver ratings");
  est->add_option("--model,-m", est_model, "parameter/table file")
      ->envname("NFCOCOMO_TABLE");
  est->add_option("--size,-s", est_size, "project size in KDSI")
      ->required()
      ->check(CLI::PositiveNumber);
  est->add_option("--mode", est_mode,
                  "development mode (cocomo-81: organic, semidetached, "
                  "embedded)");
  est->add_option("assignments", est_assignments,
                  "driver ratings as DRIVER=RATING (e.g. ACAP=VH RELY=1.5); "
                  "unassigned drivers default to Nominal");

  // train
  std::string train_model;
  std::string train_data;
  std::string train_out;
  std::string train_trace;
  TrainOptions train_opts;
  CLI::App* tr = app.add_subcommand(
      "train", "fit driver values and rule deltas to a project dataset");
  tr->add_option("--model,-m", train_model, "initial parameter/table file")
      ->envname("NFCOCOMO_TABLE");
  tr->add_option("--data,-d", train_data, "dataset CSV")->required();
  tr->add_option("--out,-o", train_out, "trained parameter file to write")
      ->required();
  tr->add_option("--trace", train_trace, "objective trace CSV to write");
  tr->add_option("--rules", train_opts.rules_path,
                 "extra dependency rules file to attach");
  add_train_options(tr, train_opts);

  // evaluate
  std::string eval_model;
  std::string eval_data;
  std::vector<double> eval_levels;
  bool eval_strict = false;
  std::string eval_label;
  std::string eval_report_csv;
  std::string eval_plot;
  EvalSideOptions eval_side;
  TrainOptions eval_train_opts;
  CLI::App* ev = app.add_subcommand(
      "evaluate", "PRED/MMRE report for a model over a dataset");
  ev->add_option("--model,-m", eval_model, "parameter/table file")
      ->envname("NFCOCOMO_TABLE");
  ev->add_option("--data,-d", eval_data, "dataset CSV")->required();
  ev->add_option("--pred-levels", eval_levels,
                 "PRED levels in percent (default 20,30,50,100)")
      ->delimiter(',');
  ev->add_flag("--strict-pred", eval_strict,
               "count |relative error| == p/100 as outside PRED(p)");
  ev->add_option("--label", eval_label, "report label");
  ev->add_option("--report-csv", eval_report_csv, "write the report as CSV");
  ev->add_option("--plot-data", eval_plot, "write gnuplot-friendly PRED data");
  ev->add_flag("--loocv", eval_side.use_loocv,
               "leave-one-out: train on N-1 projects, score the held-out one");
  ev->add_option("--jobs,-j", eval_side.jobs, "parallel loocv folds")
      ->check(CLI::PositiveNumber);
  ev->add_option("--rules", eval_train_opts.rules_path,
                 "extra dependency rules file to attach");
  add_train_options(ev, eval_train_opts);

  // compare
  std::string cmp_model_a;
  std::string cmp_model_b;
  std::string cmp_data;
  std::vector<double> cmp_levels;
  bool cmp_strict = false;
  std::string cmp_label_a;
  std::string cmp_label_b;
  std::string cmp_report_csv;
  std::string cmp_plot;
  EvalSideOptions cmp_side_a;
  EvalSideOptions cmp_side_b;
  TrainOptions cmp_train_opts;
  int cmp_jobs = 1;
  CLI::App* cp = app.add_subcommand(
      "compare", "side-by-side PRED/MMRE table for two models");
  cp->add_option("--model-a,-a", cmp_model_a, "first parameter/table file")
      ->required();
  cp->add_option("--model-b,-b", cmp_model_b, "second parameter/table file")
      ->required();
  cp->add_option("--data,-d", cmp_data, "dataset CSV")->required();
  cp->add_option("--pred-levels", cmp_levels,
                 "PRED levels in percent (default 20,30,50,100)")
      ->delimiter(',');
  cp->add_flag("--strict-pred", cmp_strict,
               "count |relative error| == p/100 as outside PRED(p)");
  cp->add_option("--label-a", cmp_label_a, "label for the first model");
  cp->add_option("--label-b", cmp_label_b, "label for the second model");
  cp->add_option("--report-csv", cmp_report_csv, "write the table as CSV");
  cp->add_option("--plot-data", cmp_plot, "write gnuplot-friendly PRED data");
  cp->add_flag("--loocv-a", cmp_side_a.use_loocv,
               "score the first model by leave-one-out training");
  cp->add_flag("--loocv-b", cmp_side_b.use_loocv,
               "score the second model by leave-one-out training");
  cp->add_option("--jobs,-j", cmp_jobs, "parallel loocv folds")
      ->check(CLI::PositiveNumber);
  add_train_options(cp, cmp_train_opts);

  // check
  std::string check_model;
  std::string check_data;
  double check_h = 1e-6;
  double check_threshold = 1e-5;
  CLI::App* ck = app.add_subcommand(
      "check", "gradient finite-difference and monotonicity audits");
  // long-only help here: the default -h short flag collides with --h
  ck->set_help_flag("--help", "print this help message and exit");
  ck->add_option("--model,-m", check_model, "parameter/table file")
      ->envname("NFCOCOMO_TABLE");
  ck->add_option("--data,-d", check_data, "dataset CSV")->required();
  ck->add_option("--h", check_h, "finite-difference step")
      ->check(CLI::PositiveNumber);
  ck->add_option("--threshold", check_threshold,
                 "maximum acceptable relative gradient error")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (est->parsed()) {
      return run_estimate(est_model, est_size, est_mode, est_assignments);
    }
    if (tr->parsed()) {
      return run_train(train_model, train_data, train_out, train_trace,
                       train_opts);
    }
    if (ev->parsed()) {
      return run_evaluate(eval_model, eval_data, eval_levels, eval_strict,
                          eval_label, eval_side, eval_train_opts,
                          eval_report_csv, eval_plot);
    }
    if (cp->parsed()) {
      cmp_side_a.jobs = cmp_jobs;
      cmp_side_b.jobs = cmp_jobs;
      return run_compare(cmp_model_a, cmp_model_b, cmp_data, cmp_levels,
                         cmp_strict, cmp_label_a, cmp_label_b, cmp_side_a,
                         cmp_side_b, cmp_train_opts, cmp_report_csv, cmp_plot);
    }
    if (ck->parsed()) {
      return run_check(check_model, check_data, check_h, check_threshold);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const TrainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
