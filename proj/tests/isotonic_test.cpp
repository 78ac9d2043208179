#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"

#include "nfcocomo/isotonic.hpp"
#include "test_support.hpp"

using namespace nfcocomo;

namespace {

double squared_distance(const std::vector<double>& a,
                        const std::vector<double>& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += (a[i] - b[i]) * (a[i] - b[i]);
  }
  return total;
}

bool non_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1]) return false;
  }
  return true;
}

// Exhaustive grid search over monotone triples, the reference for length-3
// projections.
std::vector<double> brute_force_triple(const std::vector<double>& input,
                                       double lo, double hi, double step) {
  std::vector<double> best;
  double best_distance = 0.0;
  for (double a = lo; a <= hi + 1e-12; a += step) {
    for (double b = a; b <= hi + 1e-12; b += step) {
      for (double c = b; c <= hi + 1e-12; c += step) {
        const std::vector<double> candidate{a, b, c};
        const double distance = squared_distance(candidate, input);
        if (best.empty() || distance < best_distance) {
          best = candidate;
          best_distance = distance;
        }
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("known pools") {
  CHECK(isotonic_non_decreasing(std::vector<double>{3.0, 1.0}) ==
        std::vector<double>{2.0, 2.0});
  CHECK(isotonic_non_decreasing(std::vector<double>{1.0, 2.0, 3.0}) ==
        std::vector<double>{1.0, 2.0, 3.0});
  CHECK(isotonic_non_decreasing(std::vector<double>{3.0, 2.0, 1.0}) ==
        std::vector<double>{2.0, 2.0, 2.0});
  CHECK(isotonic_non_decreasing(std::vector<double>{1.0, 3.0, 2.0}) ==
        std::vector<double>{1.0, 2.5, 2.5});
  CHECK(isotonic_non_decreasing(std::vector<double>{}).empty());
  CHECK(isotonic_non_decreasing(std::vector<double>{5.0}) ==
        std::vector<double>{5.0});
}

TEST_CASE("projection properties hold on random sequences") {
  std::mt19937_64 g(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = test_support::uniform_int(g, 1, 12);
    std::vector<double> input;
    for (int i = 0; i < n; ++i) {
      input.push_back(test_support::uniform(g, -3.0, 3.0));
    }
    const std::vector<double> fitted = isotonic_non_decreasing(input);

    CHECK(non_decreasing(fitted));
    CHECK(isotonic_non_decreasing(fitted) == fitted);  // idempotent
    // Pooling preserves the total (each block keeps its mean).
    const double in_sum = std::accumulate(input.begin(), input.end(), 0.0);
    const double out_sum = std::accumulate(fitted.begin(), fitted.end(), 0.0);
    CHECK(in_sum == doctest::Approx(out_sum).epsilon(1e-12));
    // Already-monotone inputs pass through untouched.
    if (non_decreasing(input)) CHECK(fitted == input);
  }
}

TEST_CASE("length-3 projection matches brute-force grid search") {
  std::mt19937_64 g(22);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> input;
    for (int i = 0; i < 3; ++i) {
      input.push_back(0.05 * test_support::uniform_int(g, -40, 40));
    }
    const std::vector<double> fitted = isotonic_non_decreasing(input);
    const std::vector<double> reference =
        brute_force_triple(input, -2.2, 2.2, 0.05);
    // The analytic projection is feasible and beats (or ties) every feasible
    // grid point; the grid optimum in turn is within rounding slack of the
    // continuous one, so together these pin the result to the true minimum.
    CHECK(non_decreasing(fitted));
    CHECK(squared_distance(fitted, input) <=
          squared_distance(reference, input) + 1e-9);
  }
}

TEST_CASE("directional projection respects each driver kind") {
  DriverCalibration calib;
  calib.driver = {"X", DriverKind::effort_multiplier, Direction::decreasing, 1,
                  4};
  // Dyadic values keep the pooled means exactly representable.
  calib.level_values = {1.0, 1.5, 0.75, 0.5};

  SUBCASE("decreasing drivers project the reversed sequence") {
    const DriverCalibration projected = project_monotone(calib);
    CHECK(projected.level_values ==
          std::vector<double>{1.25, 1.25, 0.75, 0.5});
    CHECK(projected.monotone_ok());
  }
  SUBCASE("increasing drivers project forward") {
    calib.driver.direction = Direction::increasing;
    const DriverCalibration projected = project_monotone(calib);
    CHECK(projected.monotone_ok());
    CHECK(non_decreasing(projected.level_values));
  }
  SUBCASE("unconstrained drivers only get the floor") {
    calib.driver.direction = Direction::unconstrained;
    calib.level_values = {1.23, 1.08, -1.0, 1.04};
    const DriverCalibration projected = project_monotone(calib);
    CHECK(projected.level_values ==
          std::vector<double>{1.23, 1.08, kEmFloor, 1.04});
  }
  SUBCASE("multiplier values are floored") {
    calib.driver.direction = Direction::increasing;
    calib.level_values = {-0.5, 0.2, 0.4, 0.9};
    const DriverCalibration projected = project_monotone(calib);
    CHECK(projected.level_values[0] == kEmFloor);
    CHECK(projected.monotone_ok());
  }
  SUBCASE("scale factors are not floored") {
    calib.driver.kind = DriverKind::scale_factor;
    calib.driver.direction = Direction::decreasing;
    calib.level_values = {6.0, 4.0, 2.0, 0.0};
    const DriverCalibration projected = project_monotone(calib);
    CHECK(projected.level_values == std::vector<double>{6.0, 4.0, 2.0, 0.0});
  }
}

TEST_CASE("projection is idempotent at the calibration level") {
  std::mt19937_64 g(23);
  for (int trial = 0; trial < 50; ++trial) {
    DriverCalibration calib = test_support::random_calibration(
        g, "EM", DriverKind::effort_multiplier,
        trial % 2 == 0 ? Direction::increasing : Direction::decreasing, 1, 6);
    for (double& v : calib.level_values) {
      v += test_support::uniform(g, -0.5, 0.5);
    }
    const DriverCalibration once = project_monotone(calib);
    const DriverCalibration twice = project_monotone(once);
    CHECK(once.level_values == twice.level_values);
    CHECK(once.monotone_ok());
  }
}
