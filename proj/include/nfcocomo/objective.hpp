#pragma once

#include <span>
#include <string>
#include <vector>

#include "nfcocomo/model.hpp"
#include "nfcocomo/project.hpp"

namespace nfcocomo {

// Weighted relative-error objective over a dataset:
//   E = sum_n 1/2 * w_n * ((E_n - E_dn) / E_dn)^2
// Per-project terms are summed order-independently (sorted reduction), so the
// value is exactly invariant under project reordering.
double objective(const ModelParams& params,
                 std::span<const ProjectRecord> projects);

struct FreezeFlags {
  bool freeze_nf = false;      // exclude driver level values
  bool freeze_dnfis = false;   // exclude rule deltas
  bool train_coefficients = false;  // include A/B (or per-mode a/b)
};

// One trainable scalar inside ModelParams.
struct ParamRef {
  enum class Kind { level_value, rule_delta, coeff_a, coeff_b, mode_a, mode_b };
  Kind kind = Kind::level_value;
  int driver = -1;       // level_value
  int level_index = -1;  // offset within the driver's defined range
  int rule = -1;         // rule_delta
  CocomoMode mode = CocomoMode::organic;  // mode_a / mode_b
  std::string label;     // "ACAP[VH]", "rule1.delta", "A", "organic.a"
};

// Flat view of the trainable parameters, in a fixed deterministic order.
struct ParamLayout {
  std::vector<ParamRef> entries;

  std::size_t size() const { return entries.size(); }
};

ParamLayout make_layout(const ModelParams& params, const FreezeFlags& flags);

std::vector<double> pack_params(const ModelParams& params,
                                const ParamLayout& layout);

void unpack_params(std::span<const double> values, const ParamLayout& layout,
                   ModelParams& params);

// Analytic dE/dP for the layout's entries: the relative-error residual factor
// chained through the effort equation, each driver's defuzzifier, and the
// dependency adjustment. Throws std::domain_error when an EM driver value
// reaches 0 (excluded by calibration positivity).
std::vector<double> gradient(const ModelParams& params,
                             std::span<const ProjectRecord> projects,
                             const ParamLayout& layout);

}  // namespace nfcocomo
