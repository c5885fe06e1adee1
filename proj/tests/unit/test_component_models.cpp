#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "hydromm/component_models.hpp"
#include "hydromm/error.hpp"
#include "oracles.hpp"

using namespace hydromm;

TEST_CASE("ball screw mass from force density") {
  const BallScrewModel bs = BallScrewModel::defaults();
  const auto m = component_mass_from_inverse_density(Measure{"force", 5500.0}, bs.force_density_law);
  CHECK(m.value == doctest::Approx(5500.0 / 15000.0).epsilon(1e-15));
  CHECK(m.value == doctest::Approx(0.37).epsilon(0.01));
  CHECK_FALSE(m.extrapolated);

  CHECK(component_mass_from_inverse_density(Measure{"force", 15000.0}, bs.force_density_law).value ==
        doctest::Approx(1.0));
}

TEST_CASE("pump mass from power density") {
  const PumpModel pump = PumpModel::defaults();
  const double expected = static_cast<double>(230.0L / oracle::power_law(133.0L, 0.30L, 230.0L));
  CHECK(expected == doctest::Approx(0.338).epsilon(0.002));
  CHECK(component_mass_from_inverse_density(Measure{"power", 230.0}, pump.power_density_law).value ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("inverse density rejects bad requirements") {
  const BallScrewModel bs = BallScrewModel::defaults();
  CHECK_THROWS_AS(component_mass_from_inverse_density(Measure{"force", 0.0}, bs.force_density_law), Error);
  CHECK_THROWS_AS(component_mass_from_inverse_density(Measure{"force", -10.0}, bs.force_density_law), Error);
  CHECK_THROWS_AS(component_mass_from_inverse_density(Measure{"power", 10.0}, bs.force_density_law), Error);
}

TEST_CASE("property: inverse-density mass increases with requirement when a < 1") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> a_dist(-1.0, 0.99);
  std::uniform_real_distribution<double> log_x(0.0, 9.0);
  for (int i = 0; i < 300; ++i) {
    const ScalingLaw law{133.0, a_dist(rng), {"power", "W"}, {"power_density", "W/kg"}, std::nullopt};
    double x1 = std::exp(log_x(rng));
    double x2 = std::exp(log_x(rng));
    if (x1 == x2) continue;
    if (x1 > x2) std::swap(x1, x2);
    CHECK(component_mass_from_inverse_density(Measure{"power", x1}, law).value <
          component_mass_from_inverse_density(Measure{"power", x2}, law).value);
  }
}

TEST_CASE("valve sizing") {
  SUBCASE("quarter turn in 50 ms at 1 N*m needs about 31 W") {
    const ValveModel v = size_valve({});
    CHECK(v.actuation_power == doctest::Approx(std::numbers::pi / 2.0 / 0.05));
    CHECK(v.actuation_power == doctest::Approx(31.4).epsilon(0.001));
  }
  SUBCASE("default masses total 185 g") {
    CHECK(size_valve({}).total_mass() == doctest::Approx(0.185));
  }
  SUBCASE("degenerate inputs are rejected") {
    ValveSpec spec;
    spec.breakaway_torque = 0.0;
    CHECK_THROWS_AS(size_valve(spec), Error);
    spec = {};
    spec.opening_time = -1.0;
    CHECK_THROWS_AS(size_valve(spec), Error);
  }
}

TEST_CASE("fit recovers an exact power law") {
  std::vector<CatalogPoint> pts;
  for (double x : {0.05, 0.1, 0.3, 0.7, 1.5, 4.0}) pts.push_back({x, 0.95 * std::pow(x, 0.56), "synthetic"});
  const FitResult fit = fit_scaling_law(pts);
  CHECK(fit.law.k == doctest::Approx(0.95).epsilon(1e-9));
  CHECK(fit.law.a == doctest::Approx(0.56).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(fit.law.fitted_range);
  CHECK(fit.law.fitted_range->lo == 0.05);
  CHECK(fit.law.fitted_range->hi == 4.0);
}

TEST_CASE("fit of a flat pair") {
  const std::vector<CatalogPoint> pts{{1.0, 2.0, "a"}, {4.0, 2.0, "b"}};
  const FitResult fit = fit_scaling_law(pts);
  CHECK(fit.law.k == doctest::Approx(2.0));
  CHECK(fit.law.a == doctest::Approx(0.0));
}

TEST_CASE("fit through the composite accumulator catalog point") {
  // One catalog unit (0.5 L, 0.45 kg) plus two points from the published law
  // at log-symmetric volumes. Symmetry keeps the slope; the off-law catalog
  // point pulls k by a third of its log offset.
  const auto law = [](double v) { return 0.95 * std::pow(v, 0.56); };
  const std::vector<CatalogPoint> pts{{0.05, law(0.05), "law"}, {0.5, 0.45, "MicroForce 0.5 L"}, {5.0, law(5.0), "law"}};
  const FitResult fit = fit_scaling_law(pts);
  CHECK(fit.law.a == doctest::Approx(0.56).epsilon(1e-9));
  CHECK(fit.law.k == doctest::Approx(0.95 * std::cbrt(0.45 / law(0.5))).epsilon(1e-9));
  CHECK(fit.law.k == doctest::Approx(0.95).epsilon(0.15));
}

TEST_CASE("fit errors") {
  CHECK_THROWS_AS(fit_scaling_law(std::vector<CatalogPoint>{{1.0, 1.0, "only"}}), Error);
  CHECK_THROWS_AS(fit_scaling_law(std::vector<CatalogPoint>{{2.0, 1.0, "a"}, {2.0, 3.0, "b"}}), Error);
  CHECK_THROWS_AS(fit_scaling_law(std::vector<CatalogPoint>{{2.0, 1.0, "a"}, {-2.0, 3.0, "b"}}), Error);
  try {
    fit_scaling_law(std::vector<CatalogPoint>{});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Fit);
    CHECK(std::string(e.what()).find("need >= 2 points") != std::string::npos);
  }
}

TEST_CASE("property: fit round trip on noiseless data") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> log_k(-4.0, 4.0);
  std::uniform_real_distribution<double> a_dist(-1.5, 1.5);
  std::uniform_real_distribution<double> log_x(-3.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    const ScalingLaw truth{std::exp(log_k(rng)), a_dist(rng), {"x", ""}, {"y", ""}, std::nullopt};
    std::vector<CatalogPoint> pts;
    for (int j = 0; j < 5; ++j) {
      const double x = std::exp(log_x(rng));
      pts.push_back({x, eval_law(truth, x), ""});
    }
    const FitResult fit = fit_scaling_law(pts);
    CHECK(std::abs(fit.law.k - truth.k) / truth.k < 1e-9);
    CHECK(std::abs(fit.law.a - truth.a) < 1e-9 * std::max(1.0, std::abs(truth.a)));
  }
}

TEST_CASE("battery mass") {
  CHECK(battery_mass(300.0) == doctest::Approx(2.0));
  CHECK(battery_mass(0.0) == 0.0);
  CHECK(battery_mass(112.5 * 2.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(battery_mass(-1.0), Error);
  CHECK(battery_mass(300.0, BatteryModel{300.0}) == doctest::Approx(1.0));
}

TEST_CASE("default library carries the catalog values") {
  const ComponentLibrary lib;
  CHECK_NOTHROW(lib.validate());
  CHECK(lib.motor.peak_torque_factor == 2.0);
  CHECK(lib.pump.efficiency == 0.80);
  CHECK(lib.pump.max_pressure == 21e6);
  CHECK(lib.accumulator.max_compression_ratio == 6.0);
  CHECK(lib.cylinder.mass == 0.56);
  CHECK(lib.cylinder.max_force == 5500.0);
  CHECK(lib.cylinder.max_torque() == doctest::Approx(100.0));
  CHECK(lib.battery.specific_energy == 150.0);
  CHECK(lib.ball_screw.efficiency == 0.9);
}
