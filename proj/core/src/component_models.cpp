#include "hydromm/component_models.hpp"

#include <cmath>
#include <sstream>

#include "hydromm/error.hpp"

namespace hydromm {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

void require_positive(double v, const char* what) {
  require(positive(v), ErrorKind::Domain, std::string(what) + " must be positive");
}

}  // namespace

MotorModel MotorModel::defaults() {
  MotorModel m;
  m.mass_law = {0.30, 0.71, quantity::motor_torque, quantity::motor_mass, std::nullopt};
  m.speed_law = {309.0, -0.64, quantity::motor_torque, quantity::motor_speed, std::nullopt};
  m.inertia_law = {2.1e-5, 1.42, quantity::motor_torque, quantity::rotor_inertia, std::nullopt};
  return m;
}

void MotorModel::validate() const {
  mass_law.validate();
  speed_law.validate();
  inertia_law.validate();
  require(std::isfinite(peak_torque_factor) && peak_torque_factor >= 1.0, ErrorKind::Domain,
          "motor peak torque factor must be >= 1");
  require(rated_efficiency > 0.0 && rated_efficiency < 1.0, ErrorKind::Domain,
          "motor rated efficiency must lie in (0, 1)");
}

double MotorModel::mass(double continuous_torque) const {
  return eval_law(mass_law, Measure{quantity::motor_torque.name, continuous_torque});
}

double MotorModel::nominal_speed(double continuous_torque) const {
  return eval_law(speed_law, Measure{quantity::motor_torque.name, continuous_torque});
}

double MotorModel::rotor_inertia(double continuous_torque) const {
  return eval_law(inertia_law, Measure{quantity::motor_torque.name, continuous_torque});
}

BallScrewModel BallScrewModel::defaults() {
  return {{15000.0, 0.0, quantity::force, quantity::force_density, Range{500.0, 15000.0}}, 0.9};
}

void BallScrewModel::validate() const {
  force_density_law.validate();
  require(efficiency > 0.0 && efficiency <= 1.0, ErrorKind::Domain, "ball screw efficiency must lie in (0, 1]");
}

AccumulatorModel AccumulatorModel::defaults() {
  return {{0.95, 0.56, quantity::displaced_volume, quantity::accumulator_mass, std::nullopt}, 6.0, 24e6};
}

void AccumulatorModel::validate() const {
  mass_law.validate();
  require(std::isfinite(max_compression_ratio) && max_compression_ratio > 1.0, ErrorKind::Domain,
          "accumulator compression ratio must exceed 1");
  require_positive(max_pressure, "accumulator max pressure");
}

PumpModel PumpModel::defaults() {
  PumpModel p;
  p.power_density_law = {133.0, 0.30, quantity::power, quantity::power_density, Range{200.0, 6500.0}};
  return p;
}

void PumpModel::validate() const {
  power_density_law.validate();
  require(efficiency > 0.0 && efficiency <= 1.0, ErrorKind::Domain, "pump efficiency must lie in (0, 1]");
  require_positive(max_pressure, "pump max pressure");
  require_positive(shaft_speed, "pump shaft speed");
}

void CylinderModel::validate() const {
  require_positive(mass, "cylinder mass");
  require_positive(stroke, "cylinder stroke");
  require_positive(max_force, "cylinder max force");
  require_positive(effective_radius, "cylinder effective radius");
  require_positive(rated_pressure, "cylinder rated pressure");
}

void ValveModel::validate() const {
  require(std::isfinite(body_mass) && body_mass >= 0.0, ErrorKind::Domain, "valve body mass must be >= 0");
  require(std::isfinite(actuation_mass) && actuation_mass >= 0.0, ErrorKind::Domain,
          "valve actuation mass must be >= 0");
  require_positive(inner_diameter, "valve inner diameter");
  require_positive(rated_pressure, "valve rated pressure");
  require_positive(breakaway_torque, "valve breakaway torque");
  require_positive(opening_time, "valve opening time");
  require_positive(opening_angle, "valve opening angle");
}

void BatteryModel::validate() const { require_positive(specific_energy, "battery specific energy"); }

void ComponentLibrary::validate() const {
  motor.validate();
  ball_screw.validate();
  accumulator.validate();
  pump.validate();
  cylinder.validate();
  valve.validate();
  battery.validate();
}

LawEvaluation component_mass_from_inverse_density(Measure requirement, const ScalingLaw& density_law) {
  const LawEvaluation density = evaluate(density_law, requirement);
  return {requirement.value / density.value, density.extrapolated};
}

ValveModel size_valve(const ValveSpec& spec, const ValveModel& catalog) {
  require_positive(spec.pressure, "valve pressure");
  require_positive(spec.inner_diameter, "valve inner diameter");
  require_positive(spec.opening_angle, "valve opening angle");
  require_positive(spec.opening_time, "valve opening time");
  require_positive(spec.breakaway_torque, "valve breakaway torque");

  ValveModel v = catalog;
  v.rated_pressure = spec.pressure;
  v.inner_diameter = spec.inner_diameter;
  v.opening_angle = spec.opening_angle;
  v.opening_time = spec.opening_time;
  v.breakaway_torque = spec.breakaway_torque;
  v.actuation_power = spec.breakaway_torque * (spec.opening_angle / spec.opening_time);
  return v;
}

FitResult fit_scaling_law(std::span<const CatalogPoint> points, const Quantity& input, const Quantity& output) {
  if (points.size() < 2) fail(ErrorKind::Fit, "need >= 2 points to fit a scaling law");

  double sum_u = 0.0;
  double sum_v = 0.0;
  double x_lo = points.front().x;
  double x_hi = points.front().x;
  for (const auto& p : points) {
    if (!(positive(p.x) && positive(p.y))) {
      std::ostringstream msg;
      msg << "catalog point '" << p.label << "' must have x > 0 and y > 0";
      fail(ErrorKind::Fit, msg.str());
    }
    sum_u += std::log(p.x);
    sum_v += std::log(p.y);
    x_lo = std::min(x_lo, p.x);
    x_hi = std::max(x_hi, p.x);
  }
  const double n = static_cast<double>(points.size());
  const double mean_u = sum_u / n;
  const double mean_v = sum_v / n;

  double s_uu = 0.0;
  double s_uv = 0.0;
  double s_vv = 0.0;
  for (const auto& p : points) {
    const double du = std::log(p.x) - mean_u;
    const double dv = std::log(p.y) - mean_v;
    s_uu += du * du;
    s_uv += du * dv;
    s_vv += dv * dv;
  }
  // relative threshold: all x equal up to rounding
  if (s_uu <= 1e-24 * std::max(1.0, mean_u * mean_u) * n) {
    fail(ErrorKind::Fit, "degenerate catalog: all x values are equal");
  }

  const double slope = s_uv / s_uu;
  const double intercept = mean_v - slope * mean_u;

  FitResult result;
  result.law = {std::exp(intercept), slope, input, output, Range{x_lo, x_hi}};
  double ss_res = 0.0;
  result.log_residuals.reserve(points.size());
  for (const auto& p : points) {
    const double r = std::log(p.y) - (intercept + slope * std::log(p.x));
    result.log_residuals.push_back(r);
    ss_res += r * r;
  }
  result.r_squared = s_vv > 0.0 ? 1.0 - ss_res / s_vv : 1.0;
  return result;
}

double battery_mass(double energy_wh, const BatteryModel& model) {
  require(std::isfinite(energy_wh) && energy_wh >= 0.0, ErrorKind::Domain, "battery energy must be >= 0");
  model.validate();
  return energy_wh / model.specific_energy;
}

}  // namespace hydromm
