#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nfcocomo/model.hpp"

namespace nfcocomo {

// Parameter/table file format ("nfcocomo-params v1"): a line-oriented text
// file listing the family, coefficients or per-mode (a, b) pairs, one driver
// line per cost driver with direction, defined levels and level values, and
// optionally dependency rules. The same format serves both the published
// coefficient tables shipped under data/ and trained parameter files.
//
//   nfcocomo-params v1
//   family cocomo-ii
//   coeff A 2.94
//   coeff B 0.91
//   driver ACAP em decreasing 1..5 1.42 1.19 1 0.85 0.71
//   rule IF CPLX XH THEN ACAP -0.5
//
// Rule-only files start with "nfcocomo-rules v1" and contain rule lines.

ModelParams load_model(const std::string& path);
ModelParams parse_model(std::istream& in, const std::string& source_name);

std::vector<DependencyRule> load_rules(const std::string& path);
std::vector<DependencyRule> parse_rules(std::istream& in,
                                        const std::string& source_name);

// Deterministic serialization: identical params produce identical bytes.
std::string serialize_model(const ModelParams& params);
void save_model(const ModelParams& params, const std::string& path);

}  // namespace nfcocomo
