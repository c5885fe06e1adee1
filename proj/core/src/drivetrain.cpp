#include "hydromm/drivetrain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hydromm/error.hpp"

namespace hydromm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Slack on capability checks so a point sized exactly at a limit passes.
constexpr double kLimitSlack = 1e-9;

struct RatioLimits {
  double inertia = kInf;
  double speed = kInf;

  double ratio() const { return std::min(inertia, speed); }
};

RatioLimits ratio_limits(const TaskRequirement& req, const MotorModel& motor, double motor_torque) {
  RatioLimits lim;
  if (req.inertia_bound) lim.inertia = std::sqrt(*req.inertia_bound / motor.rotor_inertia(motor_torque));
  if (req.speed > 0.0) lim.speed = motor.nominal_speed(motor_torque) / req.speed;
  return lim;
}

}  // namespace

const char* to_string(Binding b) noexcept { return b == Binding::Inertia ? "inertia" : "speed"; }

void TaskRequirement::validate() const {
  require(std::isfinite(torque) && torque >= 0.0, ErrorKind::Domain, "task torque must be >= 0");
  require(std::isfinite(speed) && speed >= 0.0, ErrorKind::Domain, "task speed must be >= 0");
  if (inertia_bound) {
    require(std::isfinite(*inertia_bound) && *inertia_bound > 0.0, ErrorKind::Domain,
            "task inertia bound must be > 0 when present");
  }
  require(duty >= 0.0 && duty <= 1.0, ErrorKind::Domain, "task duty must lie in [0, 1]");
  if (peak_torque) {
    require(std::isfinite(*peak_torque) && *peak_torque >= 0.0, ErrorKind::Domain, "task peak torque must be >= 0");
  }
}

DrivetrainSolution solve_ratio(const TaskRequirement& req, const MotorModel& motor, double screw_efficiency,
                               const SolverOptions& options) {
  req.validate();
  motor.validate();
  require(req.torque > 0.0, ErrorKind::Domain, "solve_ratio: task torque must be > 0");
  require(req.speed > 0.0 || req.inertia_bound.has_value(), ErrorKind::Domain,
          "solve_ratio: need a speed or an inertia bound to limit the ratio");
  require(screw_efficiency > 0.0 && screw_efficiency <= 1.0, ErrorKind::Domain,
          "solve_ratio: screw efficiency must lie in (0, 1]");
  require(options.damping > 0.0 && options.damping <= 1.0, ErrorKind::Domain, "solve_ratio: damping must lie in (0, 1]");

  const double joint_torque = std::max(req.torque, req.peak_torque.value_or(0.0) / motor.peak_torque_factor);
  auto update = [&](double tau) { return joint_torque / (screw_efficiency * ratio_limits(req, motor, tau).ratio()); };

  double tau = joint_torque / screw_efficiency;
  double residual = kInf;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const double next = update(tau);
    residual = std::abs(next - tau) / tau;
    if (residual < options.relative_tolerance) break;
    tau = (1.0 - options.damping) * tau + options.damping * next;
    if (!std::isfinite(tau) || tau <= 1e-12 || tau >= 1e12) {
      fail(ErrorKind::Infeasible, "solve_ratio: no positive fixed point for motor torque (iterate diverged)");
    }
  }
  if (!(residual < options.relative_tolerance)) {
    std::ostringstream msg;
    msg << "solve_ratio: no convergence after " << it << " iterations, residual " << residual;
    throw SolverError(msg.str(), residual, it);
  }

  const RatioLimits lim = ratio_limits(req, motor, tau);
  DrivetrainSolution sol;
  sol.ratio = lim.ratio();
  sol.motor_torque = tau;
  sol.binding = lim.inertia <= lim.speed ? Binding::Inertia : Binding::Speed;
  sol.motor_mass = motor.mass(tau);
  sol.motor_nominal_speed = motor.nominal_speed(tau);
  sol.motor_inertia = motor.rotor_inertia(tau);
  sol.inertia_ratio_limit = lim.inertia;
  sol.speed_ratio_limit = lim.speed;
  sol.converged = true;
  sol.residual = residual;
  sol.iterations = it;
  return sol;
}

double motor_loss(const MotorModel& motor, double continuous_torque, double torque, double speed) {
  require(std::isfinite(continuous_torque) && continuous_torque > 0.0, ErrorKind::Domain,
          "motor_loss: continuous torque must be > 0");
  require(std::isfinite(torque) && std::isfinite(speed), ErrorKind::Domain, "motor_loss: non-finite operating point");
  const double peak = motor.peak_torque_factor * continuous_torque;
  if (std::abs(torque) > peak * (1.0 + kLimitSlack)) {
    std::ostringstream msg;
    msg << "motor torque " << std::abs(torque) << " N*m exceeds peak " << peak << " N*m";
    fail(ErrorKind::Capability, msg.str());
  }
  const double rated_power = continuous_torque * motor.nominal_speed(continuous_torque);
  const double rated_loss = (1.0 / motor.rated_efficiency - 1.0) * rated_power;
  const double load = torque / continuous_torque;
  return rated_loss * load * load;
}

namespace {

void finish(OperatingPointLoss& op) {
  op.total_input_power = op.mechanical_power + op.total_loss();
  op.efficiency = op.total_input_power > 0.0 ? std::max(0.0, op.mechanical_power) / op.total_input_power : 0.0;
}

}  // namespace

OperatingPointLoss operating_point(const TaskRequirement& req, const DrivetrainSolution& sol, const MotorModel& motor,
                                   double screw_efficiency) {
  req.validate();
  require(sol.ratio > 0.0 && sol.motor_torque > 0.0, ErrorKind::Domain, "operating_point: invalid drivetrain");

  OperatingPointLoss op;
  op.motor_torque = req.torque / (screw_efficiency * sol.ratio);
  op.motor_speed = req.speed * sol.ratio;
  const double nominal = motor.nominal_speed(sol.motor_torque);
  if (op.motor_speed > nominal * (1.0 + kLimitSlack)) {
    std::ostringstream msg;
    msg << "motor speed " << op.motor_speed << " rad/s exceeds nominal " << nominal << " rad/s";
    fail(ErrorKind::Capability, msg.str());
  }
  op.joule_loss = motor_loss(motor, sol.motor_torque, op.motor_torque, op.motor_speed);
  op.mechanical_power = req.torque * req.speed;
  op.transmission_loss = op.mechanical_power > 0.0 ? (1.0 / screw_efficiency - 1.0) * op.mechanical_power : 0.0;
  finish(op);
  return op;
}

OperatingPointLoss pump_operating_point(double mechanical_power, double drive_motor_torque, const MotorModel& motor,
                                        const PumpModel& pump) {
  require(std::isfinite(mechanical_power) && mechanical_power >= 0.0, ErrorKind::Domain,
          "pump_operating_point: mechanical power must be >= 0");
  OperatingPointLoss op;
  op.mechanical_power = mechanical_power;
  const double shaft_power = mechanical_power / pump.efficiency;
  op.pump_loss = shaft_power - mechanical_power;
  op.motor_speed = pump.shaft_speed;
  op.motor_torque = shaft_power / pump.shaft_speed;
  op.joule_loss = motor_loss(motor, drive_motor_torque, op.motor_torque, op.motor_speed);
  finish(op);
  return op;
}

}  // namespace hydromm
