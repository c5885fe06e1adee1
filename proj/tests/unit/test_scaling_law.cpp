#include <cmath>
#include <random>

#include "doctest.h"
#include "hydromm/component_models.hpp"
#include "hydromm/error.hpp"
#include "hydromm/scaling_law.hpp"
#include "oracles.hpp"

using namespace hydromm;

TEST_CASE("eval_law reproduces the motor mass example") {
  const MotorModel motor = MotorModel::defaults();
  // 0.30 * 32^0.71 = 3.514, quoted as 3.5 kg
  CHECK(eval_law(motor.mass_law, 32.0) == doctest::Approx(3.5).epsilon(0.005));
  CHECK(eval_law(motor.mass_law, 32.0) == doctest::Approx(0.30 * std::pow(32.0, 0.71)).epsilon(1e-15));
}

TEST_CASE("eval_law at x = 1 returns k") {
  const ScalingLaw law{2.75, -1.3, {"x", ""}, {"y", ""}, std::nullopt};
  CHECK(eval_law(law, 1.0) == 2.75);
}

TEST_CASE("accumulator mass law at 0.1 L") {
  const AccumulatorModel acc = AccumulatorModel::defaults();
  const double expected = static_cast<double>(oracle::power_law(0.95L, 0.56L, 0.1L));
  CHECK(expected == doctest::Approx(0.262).epsilon(0.002));
  CHECK(eval_law(acc.mass_law, Measure{"displaced_volume", 0.1}) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("eval_law rejects non-positive input") {
  const ScalingLaw law = MotorModel::defaults().mass_law;
  CHECK_THROWS_AS(eval_law(law, 0.0), Error);
  CHECK_THROWS_AS(eval_law(law, -3.0), Error);
  CHECK_THROWS_AS(eval_law(law, std::nan("")), Error);
  try {
    eval_law(law, 0.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("quantity labels must match") {
  const ScalingLaw law = MotorModel::defaults().mass_law;
  CHECK_NOTHROW(eval_law(law, Measure{"motor_torque", 2.0}));
  try {
    eval_law(law, Measure{"force", 2.0});
    FAIL("mismatched quantity accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Units);
  }
}

TEST_CASE("evaluation outside the fitted range is flagged") {
  const ScalingLaw law = BallScrewModel::defaults().force_density_law;
  CHECK_FALSE(evaluate(law, Measure{"force", 5500.0}).extrapolated);
  CHECK(evaluate(law, Measure{"force", 100.0}).extrapolated);
  CHECK(evaluate(law, Measure{"force", 20000.0}).extrapolated);
  // extrapolated values are still computed, not clamped
  CHECK(evaluate(law, Measure{"force", 20000.0}).value == 15000.0);
}

TEST_CASE("laws require positive k") {
  ScalingLaw law{0.0, 1.0, {"x", ""}, {"y", ""}, std::nullopt};
  CHECK_THROWS_AS(law.validate(), Error);
  law.k = 1.0;
  CHECK_NOTHROW(law.validate());
}

TEST_CASE("property: monotonicity follows the sign of the exponent") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> k_dist(0.01, 100.0);
  std::uniform_real_distribution<double> a_dist(-2.0, 2.0);
  std::uniform_real_distribution<double> log_x(-5.0, 5.0);
  for (int i = 0; i < 500; ++i) {
    double a = a_dist(rng);
    if (std::abs(a) < 1e-3) a = 0.5;
    const ScalingLaw law{k_dist(rng), a, {"x", ""}, {"y", ""}, std::nullopt};
    double x1 = std::exp(log_x(rng));
    double x2 = std::exp(log_x(rng));
    if (x1 == x2) continue;
    if (x1 > x2) std::swap(x1, x2);
    if (a > 0) {
      CHECK(eval_law(law, x1) < eval_law(law, x2));
    } else {
      CHECK(eval_law(law, x1) > eval_law(law, x2));
    }
  }
}

TEST_CASE("scale_coefficient multiplies k only") {
  const ScalingLaw law = MotorModel::defaults().mass_law;
  const ScalingLaw quarter = scale_coefficient(law, 0.25);
  CHECK(quarter.k == doctest::Approx(0.075));
  CHECK(quarter.a == law.a);
  CHECK(eval_law(quarter, 32.0) == doctest::Approx(0.25 * eval_law(law, 32.0)));
  CHECK_THROWS_AS(scale_coefficient(law, 0.0), Error);
}
