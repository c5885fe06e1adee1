#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hydromm/component_models.hpp"
#include "hydromm/drivetrain.hpp"

namespace hydromm {

/// Knee-joint study inputs. Task torques and speeds derive from the base
/// envelope and the task-separation ratio lambda:
///   task 1 (lifting)   base_torque          at base_speed / lambda
///   task 2 (walking)   base_torque / lambda at base_speed, inertia bounded
///   task 3 (high power) base_torque         at base_speed, inertia bounded
///   task 4 (holding)   base_torque          at zero speed
struct StudyParameters {
  double lambda = 3.0;
  int n_dof = 2;
  double base_torque = 100.0;     // N*m
  double base_speed = 9.4;        // rad/s
  double inertia_bound = 0.035;   // kg*m^2
  double gamma = 0.5;             // holding fraction of the cycle (locking study)
  double task1_duty = 0.5;        // two-speed studies: share of the cycle at task 1
  std::optional<double> cycle_hours;  // battery sized when set
  std::optional<double> pump_power;   // W, offset study fill power override
  double default_fill_power = 230.0;  // W
  double accumulator_volume = 0.1;    // L
  double design_pressure = 21e6;      // Pa
  bool include_pump_drive_motor = true;

  void validate() const;

  TaskRequirement task1() const;
  TaskRequirement task2() const;
  TaskRequirement task3() const;
  TaskRequirement holding() const;

  friend bool operator==(const StudyParameters&, const StudyParameters&) = default;
};

enum class Topology { Baseline, TwoSpeed, TwoSpeedNdof, AccumulatorBoost, AccumulatorOffset, LockingValve };

/// Which comparison a design takes part in; selects the baseline's sizing
/// requirement and the duty cycle used for mean losses.
enum class Study { TwoSpeed, TwoSpeedNdof, Boost, Offset, Locking };

std::string_view to_string(Topology t) noexcept;
std::string_view to_string(Study s) noexcept;
std::optional<Topology> parse_topology(std::string_view name);
std::optional<Study> parse_study(std::string_view name);
/// The multimodal topology compared against the baseline in `s`.
Topology multimodal_of(Study s) noexcept;
/// The study a multimodal topology belongs to; Baseline maps to TwoSpeed.
Study study_of(Topology t) noexcept;

struct BomItem {
  std::string component;  // motor, ball_screw, cylinder, valve, accumulator, pump
  std::string label;      // role in the circuit, e.g. "M1"
  double requirement = 0.0;
  std::string requirement_units;
  std::string basis;  // formula trace with numbers substituted
  double unit_mass = 0.0;
  int quantity = 1;
  bool extrapolated = false;

  double mass() const noexcept { return unit_mass * quantity; }
};

struct BillOfMaterials {
  std::vector<BomItem> items;

  double total_mass() const noexcept;
  const BomItem* find(std::string_view component, std::string_view label = {}) const noexcept;
};

struct TopologyResult {
  Topology topology = Topology::Baseline;
  Study study = Study::TwoSpeed;
  int n_dof = 1;
  BillOfMaterials bom;
  std::vector<std::pair<std::string, DrivetrainSolution>> drivetrains;
  std::map<std::string, OperatingPointLoss> per_task_losses;
  std::map<std::string, double> duties;
  double mean_cycle_loss = 0.0;        // W per DOF
  std::optional<double> battery_mass;  // kg per DOF
  bool feasible = true;
  std::string infeasible_reason;
  std::vector<std::string> notes;

  double total_mass() const noexcept { return bom.total_mass(); }
  double mass_per_dof() const noexcept { return bom.total_mass() / n_dof; }
  double mass_plus_battery() const noexcept { return mass_per_dof() + battery_mass.value_or(0.0); }
};

TopologyResult eval_baseline(const StudyParameters& p, const ComponentLibrary& lib = {}, Study study = Study::TwoSpeed);
TopologyResult eval_two_speed_1dof(const StudyParameters& p, const ComponentLibrary& lib = {});
TopologyResult eval_two_speed_ndof(const StudyParameters& p, const ComponentLibrary& lib = {});
TopologyResult eval_accumulator_boost(const StudyParameters& p, const ComponentLibrary& lib = {});
TopologyResult eval_accumulator_offset(const StudyParameters& p, const ComponentLibrary& lib = {});
TopologyResult eval_locking_valve(const StudyParameters& p, const ComponentLibrary& lib = {});

/// Dispatches to the evaluator for `t`. `study` only affects the baseline.
TopologyResult evaluate(Topology t, const StudyParameters& p, const ComponentLibrary& lib = {},
                        Study study = Study::TwoSpeed);

}  // namespace hydromm
