#pragma once

#include <stdexcept>

namespace nfcocomo {

// Broken model/table/rule configuration: unknown driver ids, missing mode
// coefficients, malformed parameter files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data; messages carry row/column positions where known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numeric failure during training (non-finite objective or gradient).
class TrainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nfcocomo
