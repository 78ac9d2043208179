#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nfcocomo/model.hpp"
#include "nfcocomo/project.hpp"

namespace nfcocomo {

struct Dataset {
  std::vector<ProjectRecord> records;
  CocomoFamily family = CocomoFamily::cocomo_ii;
  std::vector<std::string> driver_ids;  // column order = rating vector order
  std::string provenance;               // free-form note (source file, ...)

  int size() const { return static_cast<int>(records.size()); }
};

// CSV schema (header required, case-insensitive):
//   name,size_kdsi,<one column per driver id>,actual_effort_sm[,weight][,mode]
// Driver cells accept linguistic tokens (VL..XH, full names) or numerics.
// The optional mode column (cocomo-81 only) takes organic | semidetached |
// embedded. Rating vectors are aligned to the model's driver order.
// Malformed input throws ParseError with row/column positions; an unknown
// column is a schema error.
Dataset load_dataset(const std::string& path, const ModelParams& model);

Dataset parse_dataset_csv(std::istream& in, const ModelParams& model,
                          const std::string& provenance);

}  // namespace nfcocomo
