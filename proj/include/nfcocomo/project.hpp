#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nfcocomo/cocomo.hpp"

namespace nfcocomo {

// One historical project. Ratings are stored aligned to the owning model's
// driver order (the dataset loader resolves driver columns to positions).
struct ProjectRecord {
  std::string name;
  double size = 0.0;            // KSLOC / KDSI
  std::vector<double> ratings;  // one per driver, model order
  double actual_effort = 0.0;   // staff-months
  double weight = 1.0;
  std::optional<CocomoMode> mode;  // cocomo-81 datasets may set this per row
};

}  // namespace nfcocomo
