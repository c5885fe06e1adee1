#include "hydromm/analysis.hpp"

#include <array>
#include <cmath>

#include "hydromm/error.hpp"

namespace hydromm {

namespace {

constexpr std::array<std::pair<SweepParameter, std::string_view>, 4> kParameterNames{{
    {SweepParameter::Lambda, "lambda"},
    {SweepParameter::Gamma, "gamma"},
    {SweepParameter::NDof, "n_dof"},
    {SweepParameter::Autonomy, "autonomy"},
}};

constexpr std::array<std::pair<Metric, std::string_view>, 3> kMetricNames{{
    {Metric::TotalMass, "total_mass"},
    {Metric::MeanLoss, "mean_loss"},
    {Metric::MassPlusBattery, "mass_plus_battery"},
}};

int sign(double v) { return (v > 0.0) - (v < 0.0); }

StudyParameters apply(StudyParameters p, SweepParameter parameter, double x) {
  switch (parameter) {
    case SweepParameter::Lambda: p.lambda = x; break;
    case SweepParameter::Gamma: p.gamma = x; break;
    case SweepParameter::NDof: p.n_dof = static_cast<int>(std::lround(x)); break;
    case SweepParameter::Autonomy: p.cycle_hours = x; break;
  }
  return p;
}

struct Side {
  double value = 0.0;
  bool feasible = true;
  std::string issue;
};

Side eval_side(Topology t, Study s, const StudyParameters& p, const ComponentLibrary& lib, Metric m) {
  try {
    const TopologyResult r = evaluate(t, p, lib, s);
    return {metric_value(r, m), r.feasible, r.infeasible_reason};
  } catch (const Error& e) {
    return {std::nan(""), false, e.what()};
  }
}

}  // namespace

std::string_view to_string(SweepParameter p) noexcept {
  for (const auto& [v, n] : kParameterNames)
    if (v == p) return n;
  return "unknown";
}

std::string_view to_string(Metric m) noexcept {
  for (const auto& [v, n] : kMetricNames)
    if (v == m) return n;
  return "unknown";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (const auto& [v, n] : kParameterNames)
    if (n == name) return v;
  return std::nullopt;
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (const auto& [v, n] : kMetricNames)
    if (n == name) return v;
  return std::nullopt;
}

std::string_view metric_units(Metric m) noexcept { return m == Metric::MeanLoss ? "W" : "kg"; }

void SweepSpec::validate(const StudyParameters& params) const {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, ErrorKind::Domain, "sweep range must satisfy lo < hi");
  require(parameter == SweepParameter::NDof || points >= 2, ErrorKind::Domain, "sweep needs at least 2 points");
  switch (parameter) {
    case SweepParameter::Lambda:
      require(study != Study::Locking, ErrorKind::Domain, "lambda does not affect the locking study");
      require(lo >= 1.0, ErrorKind::Domain, "lambda sweep must start at >= 1");
      break;
    case SweepParameter::Gamma:
      require(study == Study::Locking, ErrorKind::Domain, "gamma is only used by the locking study");
      require(lo >= 0.0 && hi <= 1.0, ErrorKind::Domain, "gamma sweep must stay within [0, 1]");
      break;
    case SweepParameter::NDof:
      require(study == Study::TwoSpeedNdof, ErrorKind::Domain, "n_dof is only used by the shared-pump study");
      require(std::ceil(lo) <= std::floor(hi) && lo >= 2.0, ErrorKind::Domain,
              "n_dof sweep needs an integer >= 2 inside the range");
      break;
    case SweepParameter::Autonomy:
      require(lo >= 0.0, ErrorKind::Domain, "autonomy sweep must start at >= 0");
      break;
  }
  if (metric == Metric::MassPlusBattery) {
    require(parameter == SweepParameter::Autonomy || params.cycle_hours.has_value(), ErrorKind::Domain,
            "mass_plus_battery needs a cycle duration (set study.cycle_hours or sweep autonomy)");
  }
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> xs;
  if (parameter == SweepParameter::NDof) {
    for (double n = std::ceil(lo); n <= std::floor(hi); n += 1.0) xs.push_back(n);
    return xs;
  }
  xs.reserve(points);
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) xs.push_back(i + 1 == points ? hi : lo + step * i);
  return xs;
}

double metric_value(const TopologyResult& r, Metric m) {
  switch (m) {
    case Metric::TotalMass: return r.mass_per_dof();
    case Metric::MeanLoss: return r.mean_cycle_loss;
    case Metric::MassPlusBattery: return r.mass_plus_battery();
  }
  return 0.0;
}

std::optional<Crossover> find_crossover(const std::function<double(double)>& f, double lo, double hi, double rel_tol) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, ErrorKind::Domain, "find_crossover: need lo < hi");
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return Crossover{lo, lo, lo};
  if (f_hi == 0.0) return Crossover{hi, hi, hi};
  if (sign(f_lo) == sign(f_hi) || std::isnan(f_lo) || std::isnan(f_hi)) return std::nullopt;

  const double width = rel_tol * (hi - lo);
  while (hi - lo >= width) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    const double f_mid = f(mid);
    if (f_mid == 0.0) return Crossover{mid, mid, mid};
    if (sign(f_mid) == sign(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return Crossover{0.5 * (lo + hi), lo, hi};
}

SweepResult sweep(const SweepSpec& spec, const StudyParameters& params, const ComponentLibrary& lib) {
  spec.validate(params);
  const Topology multimodal = multimodal_of(spec.study);

  SweepResult result;
  result.spec = spec;
  for (double x : spec.grid()) {
    const StudyParameters p = apply(params, spec.parameter, x);
    const Side base = eval_side(Topology::Baseline, spec.study, p, lib, spec.metric);
    const Side multi = eval_side(multimodal, spec.study, p, lib, spec.metric);
    result.rows.push_back({x, base.value, multi.value, base.feasible, multi.feasible, base.issue, multi.issue});
  }

  // Sign changes of the difference over feasible rows; exact zeros carry no sign.
  const SweepRow* last = nullptr;
  std::optional<std::pair<double, double>> first_bracket;
  for (const auto& row : result.rows) {
    if (!row.feasible() || sign(row.difference()) == 0) continue;
    if (last && sign(last->difference()) != sign(row.difference())) {
      ++result.sign_changes;
      if (!first_bracket) first_bracket = {last->parameter, row.parameter};
    }
    last = &row;
  }
  if (!first_bracket) return result;

  const auto [lo, hi] = *first_bracket;
  if (spec.parameter == SweepParameter::NDof) {
    result.crossover = Crossover{0.5 * (lo + hi), lo, hi};
    return result;
  }
  auto difference = [&](double x) {
    const StudyParameters p = apply(params, spec.parameter, x);
    return eval_side(Topology::Baseline, spec.study, p, lib, spec.metric).value -
           eval_side(multimodal, spec.study, p, lib, spec.metric).value;
  };
  const auto refined = find_crossover(difference, lo, hi);
  result.crossover = Crossover{refined ? refined->value : 0.5 * (lo + hi), lo, hi};
  return result;
}

std::vector<SensitivityRow> sensitivity_scan(const StudyParameters& params, std::span<const double> multipliers,
                                             const ComponentLibrary& lib, const SensitivityOptions& options) {
  SweepSpec spec;
  spec.parameter = SweepParameter::Lambda;
  spec.lo = options.lambda_lo;
  spec.hi = options.lambda_hi;
  spec.points = options.points;
  spec.study = Study::TwoSpeed;
  spec.metric = Metric::TotalMass;

  std::vector<SensitivityRow> rows;
  for (double m : multipliers) {
    require(std::isfinite(m) && m > 0.0, ErrorKind::Domain, "torque-density multiplier must be > 0");
    ComponentLibrary scaled = lib;
    scaled.motor.mass_law = scale_coefficient(lib.motor.mass_law, 1.0 / m);
    const SweepResult r = sweep(spec, params, scaled);
    rows.push_back({m, r.crossover, spec.hi});
  }
  return rows;
}

}  // namespace hydromm
