#pragma once

#include <optional>
#include <string>

#include "hydromm/component_models.hpp"

namespace hydromm {

/// One joint operating point.
struct TaskRequirement {
  double torque = 0.0;                  // N*m, continuous
  double speed = 0.0;                   // rad/s
  std::optional<double> inertia_bound;  // kg*m^2, max reflected motor inertia
  double duty = 1.0;                    // fraction of the work cycle
  std::optional<double> peak_torque;    // N*m, transient torque served at peak motor rating

  void validate() const;
};

enum class Binding { Inertia, Speed };

const char* to_string(Binding b) noexcept;

struct SolverOptions {
  double relative_tolerance = 1e-9;
  int max_iterations = 10000;
  double damping = 0.5;
};

/// Motor + ball screw reduction chosen for one requirement.
struct DrivetrainSolution {
  double ratio = 0.0;          // joint speed to motor speed
  double motor_torque = 0.0;   // N*m, rated continuous
  Binding binding = Binding::Speed;
  double motor_mass = 0.0;           // kg
  double motor_nominal_speed = 0.0;  // rad/s
  double motor_inertia = 0.0;        // kg*m^2
  double inertia_ratio_limit = 0.0;  // sqrt(J_i / J_M), +inf when unconstrained
  double speed_ratio_limit = 0.0;    // omega_M / omega_i, +inf at zero speed
  bool converged = false;
  double residual = 0.0;  // |tau - tau_i / (eta N)| / tau at exit
  int iterations = 0;
};

/// Solves N = min(sqrt(J_i/J_M(tau)), omega_M(tau)/omega_i) together with
/// tau = tau_eff / (eta N), where tau_eff is the larger of the continuous
/// torque and peak torque / peak_torque_factor.
///
/// Damped fixed-point iteration on tau. Throws SolverError on hitting the
/// iteration cap and ErrorKind::Infeasible when the iterate leaves (0, inf).
DrivetrainSolution solve_ratio(const TaskRequirement& req, const MotorModel& motor, double screw_efficiency,
                               const SolverOptions& options = {});

/// Copper loss at joint-independent motor torque `torque`, for a motor rated
/// at `continuous_torque`. Quadratic in torque, calibrated so the rated point
/// (continuous torque at nominal speed) runs at the motor's rated efficiency.
/// `speed` is accepted for interface symmetry; the loss does not depend on it.
double motor_loss(const MotorModel& motor, double continuous_torque, double torque, double speed);

struct OperatingPointLoss {
  double mechanical_power = 0.0;  // W, at the joint
  double joule_loss = 0.0;
  double transmission_loss = 0.0;
  double pump_loss = 0.0;
  double total_input_power = 0.0;
  double efficiency = 0.0;
  double motor_torque = 0.0;  // N*m at the motor shaft
  double motor_speed = 0.0;   // rad/s at the motor shaft

  double total_loss() const noexcept { return joule_loss + transmission_loss + pump_loss; }
};

/// Losses when `sol`'s drivetrain drives the joint at `req`'s torque and speed.
/// Throws Capability when the point exceeds the motor's peak torque or nominal speed.
OperatingPointLoss operating_point(const TaskRequirement& req, const DrivetrainSolution& sol, const MotorModel& motor,
                                   double screw_efficiency);

/// Losses for a joint driven through a pump whose drive motor is rated at
/// `drive_motor_torque` and spins at the pump shaft speed. `mechanical_power`
/// is the hydraulic power delivered to the joints.
OperatingPointLoss pump_operating_point(double mechanical_power, double drive_motor_torque, const MotorModel& motor,
                                        const PumpModel& pump);

}  // namespace hydromm
