#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "nfcocomo/errors.hpp"
#include "nfcocomo/fuzzy.hpp"
#include "test_support.hpp"

using namespace nfcocomo;

namespace {

DriverCalibration acap_like() {
  DriverCalibration calib;
  calib.driver = {"ACAP", DriverKind::effort_multiplier, Direction::decreasing,
                  1, 5};
  calib.level_values = {1.42, 1.19, 1.0, 0.85, 0.71};
  return calib;
}

}  // namespace

TEST_CASE("memberships form an exact partition of unity") {
  for (int min_level = 1; min_level <= 3; ++min_level) {
    for (int max_level = min_level; max_level <= 6; ++max_level) {
      const MembershipFamily family{min_level, max_level};
      for (int step = 0; step <= 10000; ++step) {
        const double rating =
            min_level +
            (max_level - min_level) * (static_cast<double>(step) / 10000.0);
        double total = 0.0;
        for (int level = min_level; level <= max_level; ++level) {
          total += membership(family, level, rating);
        }
        REQUIRE(std::abs(total - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("normalized firing strengths sum to one") {
  const MembershipFamily family{1, 5};
  for (double rating : {-1.0, 1.0, 2.3, 3.999, 5.0, 7.5}) {
    const RuleActivation act = fuzzify(rating, family);
    double total = 0.0;
    for (double w : act.normalized) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("defuzzified output hits the table exactly at level centers") {
  const DriverCalibration calib = acap_like();
  for (int level = 1; level <= 5; ++level) {
    CHECK(nf_output(static_cast<double>(level), calib) ==
          calib.value_at(level));
  }
}

TEST_CASE("defuzzified output interpolates linearly between centers") {
  const DriverCalibration calib = acap_like();
  CHECK(nf_output(4.5, calib) == doctest::Approx(0.5 * (0.85 + 0.71)));
  CHECK(nf_output(1.25, calib) == doctest::Approx(0.75 * 1.42 + 0.25 * 1.19));
  // Outside the range the shoulders hold the edge value.
  CHECK(nf_output(0.2, calib) == 1.42);
  CHECK(nf_output(6.8, calib) == 0.71);
}

TEST_CASE("output stays inside the level-value envelope") {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Direction direction =
        trial % 2 == 0 ? Direction::increasing : Direction::decreasing;
    const DriverCalibration calib = test_support::random_calibration(
        g, "EM", DriverKind::effort_multiplier, direction, 1,
        test_support::uniform_int(g, 2, 6));
    const auto [lo, hi] = std::minmax_element(calib.level_values.begin(),
                                              calib.level_values.end());
    for (int i = 0; i < 50; ++i) {
      const double rating = test_support::uniform(g, -1.0, 8.0);
      const double value = nf_output(rating, calib);
      CHECK(value >= *lo);
      CHECK(value <= *hi);
    }
  }
}

TEST_CASE("monotone calibrations give monotone outputs") {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Direction direction =
        trial % 2 == 0 ? Direction::increasing : Direction::decreasing;
    const DriverCalibration calib = test_support::random_calibration(
        g, "EM", DriverKind::effort_multiplier, direction, 1, 6);
    double previous = nf_output(0.5, calib);
    for (double rating = 0.6; rating <= 6.6; rating += 0.1) {
      const double value = nf_output(rating, calib);
      if (direction == Direction::increasing) {
        CHECK(value >= previous - 1e-12);
      } else {
        CHECK(value <= previous + 1e-12);
      }
      previous = value;
    }
  }
}

TEST_CASE("output gradient exposes normalized strengths and local slope") {
  const DriverCalibration calib = acap_like();

  SUBCASE("level gradients are the normalized memberships") {
    const NfGradient grad = nf_output_gradient(4.25, calib);
    CHECK(grad.level_gradients[3] == doctest::Approx(0.75));
    CHECK(grad.level_gradients[4] == doctest::Approx(0.25));
    CHECK(grad.level_gradients[0] == 0.0);
    CHECK(grad.level_gradients[1] == 0.0);
    CHECK(grad.level_gradients[2] == 0.0);
  }
  SUBCASE("rating gradient is the piece slope") {
    CHECK(nf_output_gradient(4.25, calib).rating_gradient ==
          doctest::Approx(0.71 - 0.85));
    CHECK(nf_output_gradient(1.5, calib).rating_gradient ==
          doctest::Approx(1.19 - 1.42));
  }
  SUBCASE("right-hand value at breakpoints") {
    CHECK(nf_output_gradient(4.0, calib).rating_gradient ==
          doctest::Approx(0.71 - 0.85));
    CHECK(nf_output_gradient(1.0, calib).rating_gradient ==
          doctest::Approx(1.19 - 1.42));
  }
  SUBCASE("flat outside the range") {
    CHECK(nf_output_gradient(0.5, calib).rating_gradient == 0.0);
    CHECK(nf_output_gradient(5.0, calib).rating_gradient == 0.0);
    CHECK(nf_output_gradient(6.5, calib).rating_gradient == 0.0);
  }
}

TEST_CASE("rating gradient matches finite differences off breakpoints") {
  std::mt19937_64 g(13);
  const double h = 1e-7;
  for (int trial = 0; trial < 200; ++trial) {
    const DriverCalibration calib = test_support::random_calibration(
        g, "EM", DriverKind::effort_multiplier, Direction::increasing, 1, 6);
    double rating = test_support::uniform(g, 1.05, 5.95);
    if (std::abs(rating - std::round(rating)) < 1e-3) rating += 2e-3;
    const double numeric =
        (nf_output(rating + h, calib) - nf_output(rating - h, calib)) /
        (2.0 * h);
    const double analytic = nf_output_gradient(rating, calib).rating_gradient;
    CHECK(analytic == doctest::Approx(numeric).epsilon(1e-6));
  }
}

TEST_CASE("dependency adjustment shifts targets by fire times delta") {
  DriverCalibration cplx;
  cplx.driver = {"CPLX", DriverKind::effort_multiplier, Direction::increasing,
                 1, 6};
  cplx.level_values = {0.73, 0.87, 1.0, 1.17, 1.34, 1.74};
  DriverCalibration acap = acap_like();
  const std::vector<DriverCalibration> calibrations{cplx, acap};

  DependencyRule rule;
  rule.antecedents.push_back({"CPLX", 6});
  rule.target = "ACAP";
  rule.delta = -0.5;
  const std::vector<ResolvedRule> rules =
      resolve_rules({rule}, calibrations);

  SUBCASE("full firing at the antecedent center") {
    const DnfisResult result = dnfis_adjust({{6.0, 4.0}}, rules, calibrations);
    CHECK(result.fires[0] == 1.0);
    CHECK(result.adjusted[1] == doctest::Approx(3.5));
    CHECK(result.adjusted[0] == 6.0);
  }
  SUBCASE("half firing halves the shift") {
    const DnfisResult result = dnfis_adjust({{5.5, 4.0}}, rules, calibrations);
    CHECK(result.fires[0] == doctest::Approx(0.5));
    CHECK(result.adjusted[1] == doctest::Approx(3.75));
  }
  SUBCASE("no firing leaves the rating alone") {
    const DnfisResult result = dnfis_adjust({{3.0, 4.0}}, rules, calibrations);
    CHECK(result.fires[0] == 0.0);
    CHECK(result.adjusted[1] == 4.0);
    CHECK_FALSE(result.clamped[1]);
  }
  SUBCASE("shifts clamp at the range edge and flag the driver") {
    const DnfisResult result = dnfis_adjust({{6.0, 1.2}}, rules, calibrations);
    CHECK(result.adjusted[1] == 1.0);
    CHECK(result.clamped[1]);
    const std::vector<double> grads =
        dnfis_gradient({{6.0, 1.2}}, rules, calibrations);
    CHECK(grads[0] == 0.0);
  }
  SUBCASE("unclamped delta gradient equals the firing strength") {
    const std::vector<double> grads =
        dnfis_gradient({{5.5, 4.0}}, rules, calibrations);
    CHECK(grads[0] == doctest::Approx(0.5));
  }
}

TEST_CASE("conjunctive antecedents multiply their memberships") {
  std::mt19937_64 g(14);
  ModelParams params = test_support::random_model(g, 0, 3, false);
  for (DriverCalibration& calib : params.calibrations) {
    calib.driver.min_level = 1;
    calib.driver.max_level = 6;
    calib.level_values.resize(6);
    for (std::size_t i = 0; i < 6; ++i) {
      calib.level_values[i] = 0.5 + 0.1 * static_cast<double>(i);
    }
    calib.driver.direction = Direction::increasing;
  }
  DependencyRule rule;
  rule.antecedents.push_back({params.calibrations[0].driver.id, 3});
  rule.antecedents.push_back({params.calibrations[1].driver.id, 5});
  rule.target = params.calibrations[2].driver.id;
  rule.delta = 1.0;
  const std::vector<ResolvedRule> rules =
      resolve_rules({rule}, params.calibrations);

  const DnfisResult result =
      dnfis_adjust({{3.5, 4.75, 2.0}}, rules, params.calibrations);
  CHECK(result.fires[0] == doctest::Approx(0.5 * 0.75));
  CHECK(result.adjusted[2] == doctest::Approx(2.0 + 0.375));
}

TEST_CASE("rule resolution rejects malformed rules") {
  std::mt19937_64 g(15);
  const ModelParams params = test_support::random_model(g, 1, 2, false);
  DependencyRule rule;
  rule.target = params.calibrations[1].driver.id;
  rule.delta = 0.5;

  SUBCASE("empty antecedents") {
    CHECK_THROWS_AS(resolve_rules({rule}, params.calibrations), ConfigError);
  }
  SUBCASE("level outside the antecedent driver's range") {
    rule.antecedents.push_back({params.calibrations[0].driver.id, 9});
    CHECK_THROWS_AS(resolve_rules({rule}, params.calibrations), ConfigError);
  }
  SUBCASE("unknown antecedent driver") {
    rule.antecedents.push_back({"MISSING", 3});
    CHECK_THROWS_AS(resolve_rules({rule}, params.calibrations), ConfigError);
  }
}
