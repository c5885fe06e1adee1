#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hydromm/topologies.hpp"

namespace hydromm {

enum class SweepParameter { Lambda, Gamma, NDof, Autonomy };
enum class Metric { TotalMass, MeanLoss, MassPlusBattery };

std::string_view to_string(SweepParameter p) noexcept;
std::string_view to_string(Metric m) noexcept;
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);
std::optional<Metric> parse_metric(std::string_view name);
/// Units of a metric, for labels and reports.
std::string_view metric_units(Metric m) noexcept;

struct SweepSpec {
  SweepParameter parameter = SweepParameter::Lambda;
  double lo = 1.0;
  double hi = 4.0;
  int points = 61;  // ignored for NDof, which steps through every integer in [lo, hi]
  Study study = Study::TwoSpeed;
  Metric metric = Metric::TotalMass;

  /// Throws Domain on an empty range, too few points, or a parameter the study does not use.
  void validate(const StudyParameters& params) const;
  std::vector<double> grid() const;
};

struct SweepRow {
  double parameter = 0.0;
  double baseline = 0.0;
  double multimodal = 0.0;
  bool feasible_baseline = true;
  bool feasible_multimodal = true;
  std::string baseline_issue;
  std::string multimodal_issue;

  bool feasible() const noexcept { return feasible_baseline && feasible_multimodal; }
  double difference() const noexcept { return baseline - multimodal; }
};

/// Root of baseline - multimodal. `lo`/`hi` bracket it.
struct Crossover {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  std::optional<Crossover> crossover;  // first sign change, refined by bisection
  int sign_changes = 0;
};

/// Bisection on f over [lo, hi] until the bracket is narrower than
/// rel_tol * (hi - lo). Returns nullopt when f(lo) and f(hi) share a sign.
std::optional<Crossover> find_crossover(const std::function<double(double)>& f, double lo, double hi,
                                        double rel_tol = 1e-6);

/// Evaluates baseline and multimodal at every grid point. Infeasible or
/// failing rows are kept and flagged; they are skipped when locating the crossover.
SweepResult sweep(const SweepSpec& spec, const StudyParameters& params, const ComponentLibrary& lib = {});

/// Metric of one design.
double metric_value(const TopologyResult& r, Metric m);

struct SensitivityOptions {
  double lambda_lo = 1.0;
  double lambda_hi = 50.0;
  int points = 197;
};

struct SensitivityRow {
  double multiplier = 1.0;  // motor torque-density multiplier
  std::optional<Crossover> crossover;
  double scan_hi = 0.0;  // absent crossover means lambda* > scan_hi
};

/// Two-speed mass crossover with the motor mass-law coefficient divided by
/// each multiplier.
std::vector<SensitivityRow> sensitivity_scan(const StudyParameters& params, std::span<const double> multipliers,
                                             const ComponentLibrary& lib = {}, const SensitivityOptions& options = {});

}  // namespace hydromm
