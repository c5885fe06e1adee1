#pragma once

#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hydromm/scaling_law.hpp"

namespace hydromm {

/// Frameless brushless torque motor. All properties scale with rated
/// continuous torque.
struct MotorModel {
  ScalingLaw mass_law;
  ScalingLaw speed_law;
  ScalingLaw inertia_law;
  double peak_torque_factor = 2.0;
  double rated_efficiency = 0.85;

  void validate() const;

  double mass(double continuous_torque) const;
  double nominal_speed(double continuous_torque) const;
  double rotor_inertia(double continuous_torque) const;

  static MotorModel defaults();

  friend bool operator==(const MotorModel&, const MotorModel&) = default;
};

struct BallScrewModel {
  ScalingLaw force_density_law;  // N/kg as a function of thrust
  double efficiency = 0.9;

  void validate() const;
  static BallScrewModel defaults();

  friend bool operator==(const BallScrewModel&, const BallScrewModel&) = default;
};

/// Gas-charged accumulator, treated as a lossless spring.
struct AccumulatorModel {
  ScalingLaw mass_law;  // displaced volume [L] -> kg
  double max_compression_ratio = 6.0;
  double max_pressure = 24e6;  // Pa

  void validate() const;
  static AccumulatorModel defaults();

  friend bool operator==(const AccumulatorModel&, const AccumulatorModel&) = default;
};

struct PumpModel {
  ScalingLaw power_density_law;  // W -> W/kg
  double efficiency = 0.80;
  double max_pressure = 21e6;  // Pa
  double shaft_speed = 3000.0 * 2.0 * std::numbers::pi / 60.0;  // rad/s, drive motor operating speed

  void validate() const;
  static PumpModel defaults();

  friend bool operator==(const PumpModel&, const PumpModel&) = default;
};

/// Fixed-size hydraulic cylinder; the same unit serves as master and slave.
struct CylinderModel {
  double mass = 0.56;                    // kg
  double stroke = 0.05;                  // m
  double max_force = 5500.0;             // N
  double effective_radius = 1.0 / 55.0;  // m, joint lever arm
  double rated_pressure = 21e6;          // Pa

  void validate() const;

  double max_torque() const noexcept { return max_force * effective_radius; }
  double piston_area() const noexcept { return max_force / rated_pressure; }
  /// Swept volume over the full stroke, in litres.
  double displaced_volume_l() const noexcept { return piston_area() * stroke * 1000.0; }
  double force_for_torque(double joint_torque) const noexcept { return joint_torque / effective_radius; }

  friend bool operator==(const CylinderModel&, const CylinderModel&) = default;
};

/// Motorized quarter-turn ball valve.
struct ValveModel {
  double body_mass = 0.047;        // kg
  double actuation_mass = 0.138;   // kg, motor + gearbox
  double inner_diameter = 6.3e-3;  // m
  double rated_pressure = 21e6;    // Pa
  double breakaway_torque = 1.0;   // N*m
  double opening_time = 0.05;      // s
  double opening_angle = std::numbers::pi / 2.0;  // rad
  double actuation_power = 0.0;    // W, filled in by size_valve

  void validate() const;
  double total_mass() const noexcept { return body_mass + actuation_mass; }

  friend bool operator==(const ValveModel&, const ValveModel&) = default;
};

struct BatteryModel {
  double specific_energy = 150.0;  // Wh/kg

  void validate() const;

  friend bool operator==(const BatteryModel&, const BatteryModel&) = default;
};

/// Every component model used by the topology evaluators.
struct ComponentLibrary {
  MotorModel motor = MotorModel::defaults();
  BallScrewModel ball_screw = BallScrewModel::defaults();
  AccumulatorModel accumulator = AccumulatorModel::defaults();
  PumpModel pump = PumpModel::defaults();
  CylinderModel cylinder;
  ValveModel valve;
  BatteryModel battery;

  void validate() const;

  friend bool operator==(const ComponentLibrary&, const ComponentLibrary&) = default;
};

/// Mass of a component whose catalog trend is a density (requirement per kg).
LawEvaluation component_mass_from_inverse_density(Measure requirement, const ScalingLaw& density_law);

struct ValveSpec {
  double pressure = 21e6;
  double inner_diameter = 6.3e-3;
  double opening_angle = std::numbers::pi / 2.0;
  double opening_time = 0.05;
  double breakaway_torque = 1.0;
};

/// Attaches the actuation power (breakaway torque times mean opening speed)
/// to a valve built from `catalog` masses.
ValveModel size_valve(const ValveSpec& spec, const ValveModel& catalog = {});

struct CatalogPoint {
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

struct FitResult {
  ScalingLaw law;
  double r_squared = 0.0;            // in log-log space
  std::vector<double> log_residuals; // ln(y) - ln(k x^a), one per point
};

/// Unweighted least squares on (ln x, ln y).
FitResult fit_scaling_law(std::span<const CatalogPoint> points, const Quantity& input = {"x", ""},
                          const Quantity& output = {"y", ""});

/// Battery mass for a given energy in Wh.
double battery_mass(double energy_wh, const BatteryModel& model = {});

}  // namespace hydromm
