#include "nfcocomo/model_io.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "nfcocomo/errors.hpp"
#include "nfcocomo/rating.hpp"
#include "nfcocomo/textio.hpp"

namespace nfcocomo {

namespace {

constexpr std::string_view kParamsHeader = "nfcocomo-params v1";
constexpr std::string_view kRulesHeader = "nfcocomo-rules v1";

[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& message) {
  throw ParseError(source + ": line " + std::to_string(line) + ": " + message);
}

int parse_level_token(std::string_view token, const std::string& source,
                      int line) {
  const std::optional<RatingLevel> level = parse_rating_level(token);
  if (!level) {
    fail(source, line, "unknown rating level '" + std::string(token) + "'");
  }
  return ordinal(*level);
}

// rule IF <DRV> <LEVEL> [AND <DRV> <LEVEL>]... THEN <DRV> <delta>
DependencyRule parse_rule_line(const std::vector<std::string_view>& tokens,
                               const std::string& source, int line) {
  DependencyRule rule;
  std::size_t pos = 1;
  if (pos >= tokens.size() || to_lower(tokens[pos]) != "if") {
    fail(source, line, "rule must start with IF");
  }
  ++pos;
  for (;;) {
    if (pos + 1 >= tokens.size()) {
      fail(source, line, "rule antecedent needs a driver and a level");
    }
    DependencyRule::Antecedent antecedent;
    antecedent.driver = std::string(tokens[pos]);
    antecedent.level = parse_level_token(tokens[pos + 1], source, line);
    rule.antecedents.push_back(std::move(antecedent));
    pos += 2;
    if (pos >= tokens.size()) {
      fail(source, line, "rule is missing its THEN part");
    }
    const std::string keyword = to_lower(tokens[pos]);
    if (keyword == "and") {
      ++pos;
      continue;
    }
    if (keyword == "then") {
      ++pos;
      break;
    }
    fail(source, line, "expected AND or THEN, got '" +
                           std::string(tokens[pos]) + "'");
  }
  if (pos + 2 != tokens.size()) {
    fail(source, line, "rule consequent must be '<driver> <delta>'");
  }
  rule.target = std::string(tokens[pos]);
  const std::optional<double> delta = parse_double(tokens[pos + 1]);
  if (!delta) {
    fail(source, line, "bad rule delta '" + std::string(tokens[pos + 1]) + "'");
  }
  rule.delta = *delta;
  return rule;
}

DriverCalibration parse_driver_line(const std::vector<std::string_view>& tokens,
                                    const std::string& source, int line) {
  if (tokens.size() < 6) {
    fail(source, line,
         "driver line needs id, kind, direction, level range and values");
  }
  DriverCalibration calib;
  calib.driver.id = std::string(tokens[1]);

  const std::optional<DriverKind> kind = parse_kind(tokens[2]);
  if (!kind) {
    fail(source, line, "unknown driver kind '" + std::string(tokens[2]) + "'");
  }
  calib.driver.kind = *kind;

  const std::optional<Direction> direction = parse_direction(tokens[3]);
  if (!direction) {
    fail(source, line,
         "unknown direction '" + std::string(tokens[3]) + "'");
  }
  calib.driver.direction = *direction;

  const std::string_view range = tokens[4];
  const std::size_t dots = range.find("..");
  std::optional<int> lo;
  std::optional<int> hi;
  if (dots != std::string_view::npos) {
    lo = parse_int(range.substr(0, dots));
    hi = parse_int(range.substr(dots + 2));
  }
  if (!lo || !hi) {
    fail(source, line,
         "bad level range '" + std::string(range) + "', expected lo..hi");
  }
  calib.driver.min_level = *lo;
  calib.driver.max_level = *hi;
  if (*lo > *hi) {
    fail(source, line, "level range '" + std::string(range) + "' is empty");
  }

  const std::size_t expected = static_cast<std::size_t>(calib.driver.span());
  if (tokens.size() - 5 != expected) {
    fail(source, line,
         "driver " + calib.driver.id + " declares levels " +
             std::string(range) + " but carries " +
             std::to_string(tokens.size() - 5) + " values");
  }
  for (std::size_t i = 5; i < tokens.size(); ++i) {
    const std::optional<double> value = parse_double(tokens[i]);
    if (!value) {
      fail(source, line, "bad level value '" + std::string(tokens[i]) + "'");
    }
    calib.level_values.push_back(*value);
  }
  return calib;
}

}  // namespace

ModelParams parse_model(std::istream& in, const std::string& source_name) {
  ModelParams params;
  params.coeffs.A = 0.0;
  params.coeffs.B = 0.0;

  std::string raw;
  int line_no = 0;
  bool have_header = false;
  bool have_family = false;
  bool have_a = false;
  bool have_b = false;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string_view stripped = trim(raw);
    if (stripped.empty() || stripped.front() == '#') continue;

    if (!have_header) {
      if (stripped != kParamsHeader) {
        fail(source_name, line_no,
             "expected '" + std::string(kParamsHeader) + "' header");
      }
      have_header = true;
      continue;
    }

    const std::vector<std::string_view> tokens = split_whitespace(stripped);
    const std::string keyword = to_lower(tokens[0]);

    if (keyword == "family") {
      if (tokens.size() != 2) fail(source_name, line_no, "family needs a name");
      const std::optional<CocomoFamily> family = parse_family(tokens[1]);
      if (!family) {
        fail(source_name, line_no,
             "unknown family '" + std::string(tokens[1]) + "'");
      }
      params.coeffs.family = *family;
      have_family = true;
    } else if (keyword == "coeff") {
      if (tokens.size() != 3) {
        fail(source_name, line_no, "coeff line must be 'coeff A|B <value>'");
      }
      const std::optional<double> value = parse_double(tokens[2]);
      if (!value) {
        fail(source_name, line_no,
             "bad coefficient value '" + std::string(tokens[2]) + "'");
      }
      const std::string which = to_lower(tokens[1]);
      if (which == "a") {
        params.coeffs.A = *value;
        have_a = true;
      } else if (which == "b") {
        params.coeffs.B = *value;
        have_b = true;
      } else {
        fail(source_name, line_no,
             "unknown coefficient '" + std::string(tokens[1]) + "'");
      }
    } else if (keyword == "mode") {
      if (tokens.size() != 4) {
        fail(source_name, line_no, "mode line must be 'mode <name> <a> <b>'");
      }
      const std::optional<CocomoMode> mode = parse_mode(tokens[1]);
      if (!mode) {
        fail(source_name, line_no,
             "unknown mode '" + std::string(tokens[1]) + "'");
      }
      const std::optional<double> a = parse_double(tokens[2]);
      const std::optional<double> b = parse_double(tokens[3]);
      if (!a || !b) {
        fail(source_name, line_no, "bad mode coefficients");
      }
      params.coeffs.modes[*mode] = {*a, *b};
    } else if (keyword == "default-mode") {
      if (tokens.size() != 2) {
        fail(source_name, line_no, "default-mode needs a mode name");
      }
      const std::optional<CocomoMode> mode = parse_mode(tokens[1]);
      if (!mode) {
        fail(source_name, line_no,
             "unknown mode '" + std::string(tokens[1]) + "'");
      }
      params.coeffs.default_mode = mode;
    } else if (keyword == "driver") {
      DriverCalibration calib = parse_driver_line(tokens, source_name, line_no);
      if (params.find(calib.driver.id) != nullptr) {
        fail(source_name, line_no,
             "duplicate driver '" + calib.driver.id + "'");
      }
      params.calibrations.push_back(std::move(calib));
    } else if (keyword == "rule") {
      params.rules.push_back(parse_rule_line(tokens, source_name, line_no));
    } else {
      fail(source_name, line_no,
           "unknown directive '" + std::string(tokens[0]) + "'");
    }
  }

  if (!have_header) {
    throw ParseError(source_name + ": missing '" + std::string(kParamsHeader) +
                     "' header");
  }
  if (!have_family) {
    throw ParseError(source_name + ": missing family line");
  }
  if (params.coeffs.family == CocomoFamily::cocomo_ii) {
    if (!have_a || !have_b) {
      throw ParseError(source_name + ": cocomo-ii needs coeff A and coeff B");
    }
    if (!params.coeffs.modes.empty()) {
      throw ParseError(source_name + ": mode lines only apply to cocomo-81");
    }
  } else {
    if (have_a || have_b) {
      throw ParseError(source_name + ": coeff lines only apply to cocomo-ii");
    }
    // Unused in the cocomo-81 effort equation, but keep them valid.
    params.coeffs.A = 2.94;
    params.coeffs.B = 0.91;
  }

  try {
    params.validate();
  } catch (const ConfigError& e) {
    // Keep the exception type: syntax problems are ParseErrors, semantic
    // validation failures stay ConfigErrors (the CLI maps them differently).
    throw ConfigError(source_name + ": " + e.what());
  }
  return params;
}

ModelParams load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open model file '" + path + "'");
  }
  return parse_model(in, path);
}

std::vector<DependencyRule> parse_rules(std::istream& in,
                                        const std::string& source_name) {
  std::vector<DependencyRule> rules;
  std::string raw;
  int line_no = 0;
  bool have_header = false;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string_view stripped = trim(raw);
    if (stripped.empty() || stripped.front() == '#') continue;

    if (!have_header) {
      if (stripped != kRulesHeader) {
        fail(source_name, line_no,
             "expected '" + std::string(kRulesHeader) + "' header");
      }
      have_header = true;
      continue;
    }

    const std::vector<std::string_view> tokens = split_whitespace(stripped);
    if (to_lower(tokens[0]) != "rule") {
      fail(source_name, line_no,
           "unknown directive '" + std::string(tokens[0]) + "'");
    }
    rules.push_back(parse_rule_line(tokens, source_name, line_no));
  }

  if (!have_header) {
    throw ParseError(source_name + ": missing '" + std::string(kRulesHeader) +
                     "' header");
  }
  return rules;
}

std::vector<DependencyRule> load_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open rules file '" + path + "'");
  }
  return parse_rules(in, path);
}

std::string serialize_model(const ModelParams& params) {
  std::ostringstream out;
  out << kParamsHeader << '\n';
  out << "family " << family_token(params.coeffs.family) << '\n';
  if (params.coeffs.family == CocomoFamily::cocomo_ii) {
    out << "coeff A " << format_double(params.coeffs.A) << '\n';
    out << "coeff B " << format_double(params.coeffs.B) << '\n';
  } else {
    for (const auto& [mode, mc] : params.coeffs.modes) {
      out << "mode " << mode_token(mode) << ' ' << format_double(mc.a) << ' '
          << format_double(mc.b) << '\n';
    }
    if (params.coeffs.default_mode) {
      out << "default-mode " << mode_token(*params.coeffs.default_mode)
          << '\n';
    }
  }
  for (const DriverCalibration& calib : params.calibrations) {
    out << "driver " << calib.driver.id << ' '
        << kind_token(calib.driver.kind) << ' '
        << direction_token(calib.driver.direction) << ' '
        << calib.driver.min_level << ".." << calib.driver.max_level;
    for (double value : calib.level_values) {
      out << ' ' << format_double(value);
    }
    out << '\n';
  }
  for (const DependencyRule& rule : params.rules) {
    out << "rule " << rule.describe() << '\n';
  }
  return out.str();
}

void save_model(const ModelParams& params, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write model file '" + path + "'");
  }
  out << serialize_model(params);
  if (!out) {
    throw std::runtime_error("failed writing model file '" + path + "'");
  }
}

}  // namespace nfcocomo
