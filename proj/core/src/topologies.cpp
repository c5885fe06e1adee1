#include "hydromm/topologies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hydromm/error.hpp"

namespace hydromm {

namespace {

constexpr std::array<std::pair<Topology, std::string_view>, 6> kTopologyNames{{
    {Topology::Baseline, "baseline"},
    {Topology::TwoSpeed, "two-speed"},
    {Topology::TwoSpeedNdof, "two-speed-ndof"},
    {Topology::AccumulatorBoost, "boost"},
    {Topology::AccumulatorOffset, "offset"},
    {Topology::LockingValve, "locking"},
}};

constexpr std::array<std::pair<Study, std::string_view>, 5> kStudyNames{{
    {Study::TwoSpeed, "two-speed"},
    {Study::TwoSpeedNdof, "two-speed-ndof"},
    {Study::Boost, "boost"},
    {Study::Offset, "offset"},
    {Study::Locking, "locking"},
}};

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

std::string law_trace(const ScalingLaw& law, double x) {
  return fmt(law.k) + "*(" + fmt(x) + " " + law.input.units + ")^" + fmt(law.a);
}

// Collects BOM items and feasibility findings for one design.
class DesignBuilder {
 public:
  DesignBuilder(Topology t, Study s, const StudyParameters& p, const ComponentLibrary& lib)
      : p_(p), lib_(lib) {
    p.validate();
    lib.validate();
    result_.topology = t;
    result_.study = s;
    result_.n_dof = 1;
    if (p.design_pressure > lib.cylinder.rated_pressure * (1.0 + 1e-12)) {
      gate("design pressure exceeds cylinder rated pressure");
    }
  }

  TopologyResult& result() { return result_; }
  const ComponentLibrary& lib() const { return lib_; }

  void gate(const std::string& reason) {
    if (result_.feasible) {
      result_.feasible = false;
      result_.infeasible_reason = reason;
    } else {
      result_.infeasible_reason += "; " + reason;
    }
  }

  void note(std::string text) { result_.notes.push_back(std::move(text)); }

  DrivetrainSolution drivetrain(const std::string& label, const TaskRequirement& req) {
    const DrivetrainSolution sol = solve_ratio(req, lib_.motor, lib_.ball_screw.efficiency);
    result_.drivetrains.emplace_back(label, sol);
    return sol;
  }

  void motor(const std::string& label, double continuous_torque, int quantity = 1) {
    const LawEvaluation m = evaluate(lib_.motor.mass_law, Measure{quantity::motor_torque.name, continuous_torque});
    result_.bom.items.push_back({"motor", label, continuous_torque, "N*m",
                                 law_trace(lib_.motor.mass_law, continuous_torque), m.value, quantity, m.extrapolated});
  }

  // Ball screw sized for the piston force that produces `joint_torque`.
  void ball_screw(const std::string& label, double joint_torque, int quantity = 1) {
    const double force = lib_.cylinder.force_for_torque(joint_torque);
    check_force(label + " ball screw", force);
    const LawEvaluation m =
        component_mass_from_inverse_density(Measure{quantity::force.name, force}, lib_.ball_screw.force_density_law);
    const ScalingLaw& law = lib_.ball_screw.force_density_law;
    result_.bom.items.push_back({"ball_screw", label, force, "N",
                                 fmt(force) + " N / (" + law_trace(law, force) + ")", m.value, quantity,
                                 m.extrapolated});
  }

  void cylinder(const std::string& label, int quantity = 1) {
    result_.bom.items.push_back({"cylinder", label, lib_.cylinder.max_force, "N", "catalog unit mass",
                                 lib_.cylinder.mass, quantity, false});
  }

  void valves(const std::string& label, int quantity) {
    if (p_.design_pressure > lib_.valve.rated_pressure * (1.0 + 1e-12)) gate(label + " valve pressure rating exceeded");
    const ValveModel& v = lib_.valve;
    result_.bom.items.push_back({"valve", label, v.rated_pressure, "Pa",
                                 fmt(v.body_mass) + " kg body + " + fmt(v.actuation_mass) + " kg actuation",
                                 v.total_mass(), quantity, false});
  }

  // Accumulator providing `joint_torque` through the slave cylinder.
  void accumulator(double joint_torque) {
    const AccumulatorModel& acc = lib_.accumulator;
    const double volume = p_.accumulator_volume;
    const double force = lib_.cylinder.force_for_torque(joint_torque);
    check_force("accumulator", force);
    if (p_.design_pressure > acc.max_pressure * (1.0 + 1e-12)) gate("design pressure exceeds accumulator rating");

    const double displaced = lib_.cylinder.displaced_volume_l();
    if (displaced >= volume * (1.0 - 1.0 / acc.max_compression_ratio)) {
      gate("accumulator volume too small for the cylinder stroke at max compression ratio");
    } else {
      // isothermal gas: p_end / p_start = V / (V - dV)
      const double droop = displaced / volume;
      note("accumulator pressure droop over full stroke " + fmt(100.0 * droop, 3) + "% (not modeled in force)");
    }
    const LawEvaluation m = evaluate(acc.mass_law, Measure{quantity::displaced_volume.name, volume});
    result_.bom.items.push_back({"accumulator", "offset/boost", volume, "L", law_trace(acc.mass_law, volume), m.value, 1,
                                 m.extrapolated});
  }

  // Pump rated at `power` (shaft input) plus its drive motor.
  void pump(const std::string& label, double power) {
    const PumpModel& pump = lib_.pump;
    if (p_.design_pressure > pump.max_pressure * (1.0 + 1e-12)) gate("design pressure exceeds pump rating");
    const LawEvaluation m =
        component_mass_from_inverse_density(Measure{quantity::power.name, power}, pump.power_density_law);
    result_.bom.items.push_back({"pump", label, power, "W",
                                 fmt(power) + " W / (" + law_trace(pump.power_density_law, power) + ")", m.value, 1,
                                 m.extrapolated});
    const double drive_torque = power / pump.shaft_speed;
    drive_torque_ = drive_torque;
    const double nominal = lib_.motor.nominal_speed(drive_torque);
    if (nominal < pump.shaft_speed) {
      note("pump drive motor nominal speed " + fmt(nominal) + " rad/s is below pump shaft speed " +
           fmt(pump.shaft_speed) + " rad/s");
    }
    if (p_.include_pump_drive_motor) {
      motor(label + " drive", drive_torque);
    } else {
      note("pump drive motor excluded from mass");
    }
  }

  double drive_torque() const { return drive_torque_; }

  void loss(const std::string& task, double duty, const OperatingPointLoss& op) {
    result_.per_task_losses[task] = op;
    result_.duties[task] = duty;
  }

  TopologyResult finish() {
    double mean = 0.0;
    for (const auto& [task, op] : result_.per_task_losses) mean += result_.duties.at(task) * op.total_loss();
    result_.mean_cycle_loss = mean;
    if (p_.cycle_hours) result_.battery_mass = battery_mass(mean * *p_.cycle_hours, lib_.battery);
    return std::move(result_);
  }

 private:
  void check_force(const std::string& what, double force) {
    if (force > lib_.cylinder.max_force * (1.0 + 1e-12)) {
      gate(what + " force " + fmt(force) + " N exceeds cylinder max force " + fmt(lib_.cylinder.max_force) + " N");
    }
    const double pressure = force / lib_.cylinder.piston_area();
    if (pressure > p_.design_pressure * (1.0 + 1e-12)) {
      gate(what + " needs " + fmt(pressure / 1e6) + " MPa, above design pressure");
    }
  }

  const StudyParameters& p_;
  const ComponentLibrary& lib_;
  TopologyResult result_;
  double drive_torque_ = 0.0;
};

OperatingPointLoss with_joint_power(OperatingPointLoss op, double mechanical_power) {
  op.mechanical_power = mechanical_power;
  op.total_input_power = mechanical_power + op.total_loss();
  op.efficiency = op.total_input_power > 0.0 ? mechanical_power / op.total_input_power : 0.0;
  return op;
}

OperatingPointLoss scaled(OperatingPointLoss op, double factor) {
  op.mechanical_power *= factor;
  op.joule_loss *= factor;
  op.transmission_loss *= factor;
  op.pump_loss *= factor;
  op.total_input_power *= factor;
  return op;
}

OperatingPointLoss no_loss_hold() { return {}; }

}  // namespace

void StudyParameters::validate() const {
  require(std::isfinite(lambda) && lambda >= 1.0, ErrorKind::Domain, "lambda must be >= 1");
  require(n_dof >= 1, ErrorKind::Domain, "n_dof must be >= 1");
  require(std::isfinite(base_torque) && base_torque > 0.0, ErrorKind::Domain, "base torque must be > 0");
  require(std::isfinite(base_speed) && base_speed > 0.0, ErrorKind::Domain, "base speed must be > 0");
  require(std::isfinite(inertia_bound) && inertia_bound > 0.0, ErrorKind::Domain, "inertia bound must be > 0");
  require(gamma >= 0.0 && gamma <= 1.0, ErrorKind::Domain, "gamma must lie in [0, 1]");
  require(task1_duty >= 0.0 && task1_duty <= 1.0, ErrorKind::Domain, "task 1 duty must lie in [0, 1]");
  if (cycle_hours) require(std::isfinite(*cycle_hours) && *cycle_hours >= 0.0, ErrorKind::Domain, "cycle hours must be >= 0");
  if (pump_power) require(std::isfinite(*pump_power) && *pump_power > 0.0, ErrorKind::Domain, "pump power must be > 0");
  require(std::isfinite(default_fill_power) && default_fill_power > 0.0, ErrorKind::Domain, "fill power must be > 0");
  require(std::isfinite(accumulator_volume) && accumulator_volume > 0.0, ErrorKind::Domain,
          "accumulator volume must be > 0");
  require(std::isfinite(design_pressure) && design_pressure > 0.0, ErrorKind::Domain, "design pressure must be > 0");
}

TaskRequirement StudyParameters::task1() const { return {base_torque, base_speed / lambda, std::nullopt, 1.0, {}}; }
TaskRequirement StudyParameters::task2() const { return {base_torque / lambda, base_speed, inertia_bound, 1.0, {}}; }
TaskRequirement StudyParameters::task3() const { return {base_torque, base_speed, inertia_bound, 1.0, {}}; }
TaskRequirement StudyParameters::holding() const { return {base_torque, 0.0, std::nullopt, 1.0, {}}; }

std::string_view to_string(Topology t) noexcept {
  for (const auto& [value, name] : kTopologyNames)
    if (value == t) return name;
  return "unknown";
}

std::string_view to_string(Study s) noexcept {
  for (const auto& [value, name] : kStudyNames)
    if (value == s) return name;
  return "unknown";
}

std::optional<Topology> parse_topology(std::string_view name) {
  for (const auto& [value, n] : kTopologyNames)
    if (n == name) return value;
  return std::nullopt;
}

std::optional<Study> parse_study(std::string_view name) {
  for (const auto& [value, n] : kStudyNames)
    if (n == name) return value;
  return std::nullopt;
}

Topology multimodal_of(Study s) noexcept {
  switch (s) {
    case Study::TwoSpeed: return Topology::TwoSpeed;
    case Study::TwoSpeedNdof: return Topology::TwoSpeedNdof;
    case Study::Boost: return Topology::AccumulatorBoost;
    case Study::Offset: return Topology::AccumulatorOffset;
    case Study::Locking: return Topology::LockingValve;
  }
  return Topology::Baseline;
}

Study study_of(Topology t) noexcept {
  switch (t) {
    case Topology::TwoSpeedNdof: return Study::TwoSpeedNdof;
    case Topology::AccumulatorBoost: return Study::Boost;
    case Topology::AccumulatorOffset: return Study::Offset;
    case Topology::LockingValve: return Study::Locking;
    case Topology::Baseline:
    case Topology::TwoSpeed: return Study::TwoSpeed;
  }
  return Study::TwoSpeed;
}

double BillOfMaterials::total_mass() const noexcept {
  return std::accumulate(items.begin(), items.end(), 0.0,
                         [](double acc, const BomItem& item) { return acc + item.mass(); });
}

const BomItem* BillOfMaterials::find(std::string_view component, std::string_view label) const noexcept {
  for (const auto& item : items) {
    if (item.component == component && (label.empty() || item.label == label)) return &item;
  }
  return nullptr;
}

TopologyResult eval_baseline(const StudyParameters& p, const ComponentLibrary& lib, Study study) {
  DesignBuilder d(Topology::Baseline, study, p, lib);
  const double eta = lib.ball_screw.efficiency;

  // One drivetrain covering every task. In the boost study task 3 is a
  // transient served at peak rating; elsewhere the envelope is continuous.
  TaskRequirement req = p.task3();
  if (study == Study::Boost) {
    req = p.task2();
    req.peak_torque = p.base_torque;
  }
  const DrivetrainSolution sol = d.drivetrain("M", req);
  d.motor("M", sol.motor_torque);
  d.ball_screw("M", p.base_torque);
  d.cylinder("master");

  switch (study) {
    case Study::TwoSpeed:
    case Study::TwoSpeedNdof:
      d.loss("task1", p.task1_duty, operating_point(p.task1(), sol, lib.motor, eta));
      d.loss("task2", 1.0 - p.task1_duty, operating_point(p.task2(), sol, lib.motor, eta));
      break;
    case Study::Boost:
      d.loss("task2", 1.0 - 1.0 / p.lambda, operating_point(p.task2(), sol, lib.motor, eta));
      d.loss("task3", 1.0 / p.lambda, operating_point(p.task3(), sol, lib.motor, eta));
      break;
    case Study::Offset:
      d.loss("task3", 1.0, operating_point(p.task3(), sol, lib.motor, eta));
      break;
    case Study::Locking:
      d.loss("task3", 1.0 - p.gamma, operating_point(p.task3(), sol, lib.motor, eta));
      d.loss("hold", p.gamma, operating_point(p.holding(), sol, lib.motor, eta));
      break;
  }
  return d.finish();
}

TopologyResult eval_two_speed_1dof(const StudyParameters& p, const ComponentLibrary& lib) {
  DesignBuilder d(Topology::TwoSpeed, Study::TwoSpeed, p, lib);
  const double eta = lib.ball_screw.efficiency;

  // M1 drives task 1 alone (M2 line closed). M1 gets no inertia bound: in
  // high-speed mode flows add and the reflected inertia is dominated by M2.
  const DrivetrainSolution m1 = d.drivetrain("M1", p.task1());
  const DrivetrainSolution m2 = d.drivetrain("M2", p.task2());

  d.motor("M1", m1.motor_torque);
  d.ball_screw("M1", p.base_torque);
  d.cylinder("M1 master");
  d.motor("M2", m2.motor_torque);
  d.ball_screw("M2", p.base_torque / p.lambda);
  d.cylinder("M2 master");
  d.valves("mode", 2);

  d.loss("task1", p.task1_duty, operating_point(p.task1(), m1, lib.motor, eta));
  d.loss("task2", 1.0 - p.task1_duty, operating_point(p.task2(), m2, lib.motor, eta));
  return d.finish();
}

TopologyResult eval_two_speed_ndof(const StudyParameters& p, const ComponentLibrary& lib) {
  require(p.n_dof >= 2, ErrorKind::Domain, "shared-pump two-speed design needs n_dof >= 2");
  DesignBuilder d(Topology::TwoSpeedNdof, Study::TwoSpeedNdof, p, lib);
  d.result().n_dof = p.n_dof;
  const double eta = lib.ball_screw.efficiency;
  const int n = p.n_dof;

  const DrivetrainSolution m2 = d.drivetrain("M2", p.task2());
  d.motor("M2", m2.motor_torque, n);
  d.ball_screw("M2", p.base_torque / p.lambda, n);
  d.cylinder("M2 master", n);
  d.valves("selection", 2 * n);
  d.valves("pump line", 1);

  // Pump delivers task-1 continuous power to every DOF at once.
  const TaskRequirement t1 = p.task1();
  const double joint_power = t1.torque * t1.speed;
  const double pump_power = n * joint_power / lib.pump.efficiency;
  d.pump("pump", pump_power);

  const OperatingPointLoss all = pump_operating_point(n * joint_power, d.drive_torque(), lib.motor, lib.pump);
  d.loss("task1", p.task1_duty, scaled(all, 1.0 / n));
  d.loss("task2", 1.0 - p.task1_duty, operating_point(p.task2(), m2, lib.motor, eta));
  return d.finish();
}

TopologyResult eval_accumulator_boost(const StudyParameters& p, const ComponentLibrary& lib) {
  DesignBuilder d(Topology::AccumulatorBoost, Study::Boost, p, lib);
  const double eta = lib.ball_screw.efficiency;

  const DrivetrainSolution m2 = d.drivetrain("M2", p.task2());
  // During the boost M2 runs at peak; the accumulator covers the rest.
  const double m2_share = std::min(p.base_torque, lib.motor.peak_torque_factor * p.base_torque / p.lambda);
  const double shortfall = p.base_torque - m2_share;

  d.motor("M2", m2.motor_torque);
  d.ball_screw("M2", m2_share);
  d.cylinder("M2 master");
  d.accumulator(shortfall);
  d.pump("charge pump", p.task2().torque * p.task2().speed / lib.pump.efficiency);
  d.valves("mode", 2);
  d.note("accumulator torque share " + fmt(shortfall) + " N*m");

  d.loss("task2", 1.0 - 1.0 / p.lambda, operating_point(p.task2(), m2, lib.motor, eta));
  TaskRequirement boost = p.task3();
  boost.torque = m2_share;
  // accumulator energy is returned losslessly; pump recharge losses are not counted
  d.loss("task3", 1.0 / p.lambda,
         with_joint_power(operating_point(boost, m2, lib.motor, eta), p.base_torque * p.base_speed));
  return d.finish();
}

TopologyResult eval_accumulator_offset(const StudyParameters& p, const ComponentLibrary& lib) {
  DesignBuilder d(Topology::AccumulatorOffset, Study::Offset, p, lib);
  const double eta = lib.ball_screw.efficiency;

  const DrivetrainSolution m2 = d.drivetrain("M2", p.task2());
  const double offset = p.base_torque * (1.0 - 1.0 / p.lambda);

  d.motor("M2", m2.motor_torque);
  d.ball_screw("M2", p.base_torque / p.lambda);
  d.cylinder("M2 master");
  d.accumulator(offset);
  d.pump("fill pump", p.pump_power.value_or(p.default_fill_power));
  d.valves("mode", 2);
  d.note("static offset " + fmt(offset) + " N*m");

  // Task 3 held continuously: offset from the accumulator, dynamic part from M2.
  d.loss("task3", 1.0,
         with_joint_power(operating_point(p.task2(), m2, lib.motor, eta), p.base_torque * p.base_speed));
  return d.finish();
}

TopologyResult eval_locking_valve(const StudyParameters& p, const ComponentLibrary& lib) {
  DesignBuilder d(Topology::LockingValve, Study::Locking, p, lib);
  const double eta = lib.ball_screw.efficiency;

  // Same drivetrain as the baseline; the valve blocks the flow while holding.
  const DrivetrainSolution sol = d.drivetrain("M", p.task3());
  d.motor("M", sol.motor_torque);
  d.ball_screw("M", p.base_torque);
  d.cylinder("master");
  d.valves("locking", 1);

  d.loss("task3", 1.0 - p.gamma, operating_point(p.task3(), sol, lib.motor, eta));
  d.loss("hold", p.gamma, no_loss_hold());
  return d.finish();
}

TopologyResult evaluate(Topology t, const StudyParameters& p, const ComponentLibrary& lib, Study study) {
  switch (t) {
    case Topology::Baseline: return eval_baseline(p, lib, study);
    case Topology::TwoSpeed: return eval_two_speed_1dof(p, lib);
    case Topology::TwoSpeedNdof: return eval_two_speed_ndof(p, lib);
    case Topology::AccumulatorBoost: return eval_accumulator_boost(p, lib);
    case Topology::AccumulatorOffset: return eval_accumulator_offset(p, lib);
    case Topology::LockingValve: return eval_locking_valve(p, lib);
  }
  fail(ErrorKind::Domain, "unknown topology");
}

}  // namespace hydromm
