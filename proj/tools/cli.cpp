#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>

#include "CLI11.hpp"
#include "hydromm/analysis.hpp"
#include "hydromm/config.hpp"
#include "hydromm/error.hpp"
#include "hydromm/report.hpp"

namespace hydromm::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  bool paper_strict = false;
  bool dump_config = false;
  std::string format = "text";
  std::optional<double> lambda;
  std::optional<double> gamma;
  std::optional<int> ndof;
  std::optional<double> autonomy_hours;
  std::string out_dir;

  std::string topology;
  std::string study;
  std::string parameter;
  std::string metric;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<int> points;
  std::vector<double> multipliers{1.0, 2.0, 4.0};
  std::string catalog;
};

StudyConfig build_config(const Options& o) {
  StudyConfig c = o.config_path.empty() ? StudyConfig{} : load_config(o.config_path);
  for (const auto& s : o.overrides) apply_override(c, s);
  if (o.lambda) c.params.lambda = *o.lambda;
  if (o.gamma) c.params.gamma = *o.gamma;
  if (o.ndof) c.params.n_dof = *o.ndof;
  if (o.autonomy_hours) c.params.cycle_hours = *o.autonomy_hours;
  if (o.paper_strict) c.params.include_pump_drive_motor = false;
  if (!o.out_dir.empty()) c.output_dir = o.out_dir;
  try {
    c.params.validate();
  } catch (const Error& e) {
    fail(ErrorKind::Config, e.what());
  }
  return c;
}

fs::path ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Io, "cannot write " + path.string());
  f << content;
  if (!f) fail(ErrorKind::Io, "write failed for " + path.string());
}

std::string axis_label(SweepParameter p) {
  switch (p) {
    case SweepParameter::Lambda: return "lambda (task separation ratio)";
    case SweepParameter::Gamma: return "gamma (holding fraction of cycle)";
    case SweepParameter::NDof: return "number of DOF";
    case SweepParameter::Autonomy: return "autonomy (h)";
  }
  return {};
}

std::string metric_label(Metric m) {
  switch (m) {
    case Metric::TotalMass: return "mass (kg/DOF)";
    case Metric::MeanLoss: return "mean power loss (W/DOF)";
    case Metric::MassPlusBattery: return "mass incl. battery (kg/DOF)";
  }
  return {};
}

void describe_crossover(std::ostream& out, const SweepResult& r) {
  if (r.crossover) {
    out << "crossover " << to_string(r.spec.parameter) << "* = " << std::setprecision(6) << r.crossover->value
        << " (grid bracket [" << r.crossover->lo << ", " << r.crossover->hi << "])\n";
  } else {
    out << "no crossover in [" << r.spec.lo << ", " << r.spec.hi << "]\n";
  }
}

// Writes <stem>.csv and <stem>.svg under dir.
void emit_sweep(std::ostream& out, const fs::path& dir, const std::string& stem, const SweepResult& r,
                const std::string& title) {
  std::ostringstream csv;
  write_sweep_csv(csv, r);
  write_file(dir / (stem + ".csv"), csv.str());
  write_file(dir / (stem + ".svg"),
             render_sweep_svg(r, {title, axis_label(r.spec.parameter), metric_label(r.spec.metric)}));
  out << stem << ": " << r.rows.size() << " rows, ";
  describe_crossover(out, r);
}

int cmd_size(const Options& o, std::ostream& out) {
  const auto topology = parse_topology(o.topology);
  if (!topology) fail(ErrorKind::Config, "unknown topology '" + o.topology + "'");
  const StudyConfig c = build_config(o);
  const TopologyResult r = evaluate(*topology, c.params, c.library, study_of(*topology));
  if (o.format == "json") {
    out << to_json(r) << '\n';
  } else if (o.format == "csv") {
    write_bom_csv(out, r);
  } else {
    write_text_report(out, r);
  }
  return r.feasible ? kOk : kInfeasible;
}

SweepSpec default_spec(Study study, const StudyConfig& c) {
  SweepSpec spec;
  spec.study = study;
  if (study == Study::Locking) {
    spec.parameter = SweepParameter::Gamma;
    spec.lo = 0.0;
    spec.hi = 1.0;
    spec.points = c.sweep.gamma_points;
    spec.metric = c.params.cycle_hours ? Metric::MassPlusBattery : Metric::MeanLoss;
  } else {
    spec.parameter = SweepParameter::Lambda;
    spec.lo = c.sweep.lambda_lo;
    spec.hi = c.sweep.lambda_hi;
    spec.points = c.sweep.lambda_points;
    spec.metric = Metric::TotalMass;
  }
  return spec;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const auto study = parse_study(o.study);
  if (!study) fail(ErrorKind::Config, "unknown study '" + o.study + "'");
  const StudyConfig c = build_config(o);
  SweepSpec spec = default_spec(*study, c);
  if (!o.parameter.empty()) {
    const auto p = parse_sweep_parameter(o.parameter);
    if (!p) fail(ErrorKind::Config, "unknown sweep parameter '" + o.parameter + "'");
    if (*p != spec.parameter) {
      spec.parameter = *p;
      if (*p == SweepParameter::NDof) spec = {*p, 2.0, 8.0, 7, *study, spec.metric};
      if (*p == SweepParameter::Autonomy) spec = {*p, 1.0 / 6.0, 2.0, 23, *study, spec.metric};
      if (*p == SweepParameter::Gamma) spec = {*p, 0.0, 1.0, c.sweep.gamma_points, *study, spec.metric};
      if (*p == SweepParameter::Lambda) spec = {*p, c.sweep.lambda_lo, c.sweep.lambda_hi, c.sweep.lambda_points, *study, spec.metric};
    }
  }
  if (!o.metric.empty()) {
    const auto m = parse_metric(o.metric);
    if (!m) fail(ErrorKind::Config, "unknown metric '" + o.metric + "'");
    spec.metric = *m;
  }
  if (o.lo) spec.lo = *o.lo;
  if (o.hi) spec.hi = *o.hi;
  if (o.points) spec.points = *o.points;
  spec.validate(c.params);  // before touching the file system

  const SweepResult r = sweep(spec, c.params, c.library);
  const fs::path dir = ensure_dir(c.output_dir);
  const std::string stem = std::string(to_string(*study)) + "_" + std::string(to_string(spec.parameter)) + "_" +
                           std::string(to_string(spec.metric));
  emit_sweep(out, dir, stem, r,
             std::string(to_string(multimodal_of(*study))) + " vs baseline: " + std::string(to_string(spec.metric)));
  return kOk;
}

void print_sensitivity(std::ostream& out, const std::vector<SensitivityRow>& rows) {
  for (const auto& row : rows) {
    out << "motor torque density x" << row.multiplier << ": ";
    if (row.crossover) {
      out << "crossover lambda* = " << std::setprecision(6) << row.crossover->value << '\n';
    } else {
      out << "no crossover for lambda <= " << row.scan_hi << " (multimodal never lighter)\n";
    }
  }
}

int cmd_sensitivity(const Options& o, std::ostream& out) {
  const StudyConfig c = build_config(o);
  const auto rows = sensitivity_scan(c.params, o.multipliers, c.library);
  if (o.format == "csv") {
    write_sensitivity_csv(out, rows);
  } else {
    print_sensitivity(out, rows);
  }
  return kOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  const auto points = load_catalog_csv(o.catalog);
  const FitResult fit = fit_scaling_law(points);
  if (o.format == "json") {
    out << "{\"k\": " << std::setprecision(17) << fit.law.k << ", \"a\": " << fit.law.a
        << ", \"r_squared\": " << fit.r_squared << "}\n";
  } else {
    write_fit_report(out, fit, points);
  }
  return kOk;
}

int cmd_report_all(const Options& o, std::ostream& out) {
  const StudyConfig c = build_config(o);
  const fs::path dir = ensure_dir(c.output_dir);

  auto lambda_spec = [&](Study s, Metric m) {
    return SweepSpec{SweepParameter::Lambda, c.sweep.lambda_lo, c.sweep.lambda_hi, c.sweep.lambda_points, s, m};
  };
  auto gamma_spec = [&](Metric m) {
    return SweepSpec{SweepParameter::Gamma, 0.0, 1.0, c.sweep.gamma_points, Study::Locking, m};
  };

  emit_sweep(out, dir, "two_speed_mass", sweep(lambda_spec(Study::TwoSpeed, Metric::TotalMass), c.params, c.library),
             "Two-speed switching: mass");
  emit_sweep(out, dir, "two_speed_ndof_mass",
             sweep(lambda_spec(Study::TwoSpeedNdof, Metric::TotalMass), c.params, c.library),
             "Shared-pump two-speed: mass");

  StudyParameters task1_only = c.params;
  task1_only.task1_duty = 1.0;
  emit_sweep(out, dir, "two_speed_task1_loss",
             sweep(lambda_spec(Study::TwoSpeed, Metric::MeanLoss), task1_only, c.library),
             "Two-speed switching: power loss at task 1");
  emit_sweep(out, dir, "two_speed_ndof_task1_loss",
             sweep(lambda_spec(Study::TwoSpeedNdof, Metric::MeanLoss), task1_only, c.library),
             "Shared-pump two-speed: power loss at task 1");

  emit_sweep(out, dir, "boost_mass", sweep(lambda_spec(Study::Boost, Metric::TotalMass), c.params, c.library),
             "Accumulator power boost: mass");
  emit_sweep(out, dir, "offset_mass", sweep(lambda_spec(Study::Offset, Metric::TotalMass), c.params, c.library),
             "Accumulator static offset: mass");

  emit_sweep(out, dir, "locking_loss", sweep(gamma_spec(Metric::MeanLoss), c.params, c.library),
             "Locking valve: mean power loss");
  for (const auto& [stem, hours] : {std::pair<std::string, double>{"locking_mass_1h", 1.0},
                                    std::pair<std::string, double>{"locking_mass_10min", 10.0 / 60.0}}) {
    StudyParameters p = c.params;
    p.cycle_hours = hours;
    emit_sweep(out, dir, stem, sweep(gamma_spec(Metric::MassPlusBattery), p, c.library),
               "Locking valve: mass incl. battery");
  }

  const auto rows = sensitivity_scan(c.params, o.multipliers, c.library);
  std::ostringstream csv;
  write_sensitivity_csv(csv, rows);
  write_file(dir / "sensitivity.csv", csv.str());
  print_sensitivity(out, rows);
  return kOk;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Infeasible:
    case ErrorKind::Solver:
    case ErrorKind::Capability: return kInfeasible;
    case ErrorKind::Io: return kIo;
    default: return kUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trade-study engine for multimodal hydrostatic actuators", "hydromm"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  Options o;
  app.add_option("--config", o.config_path, "Study configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", o.overrides, "Override a config value, section.key=value")->take_all();
  app.add_flag("--paper-strict", o.paper_strict, "Drop pump drive motors from component masses");
  app.add_flag("--dump-config", o.dump_config, "Print the effective configuration and exit");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
  app.add_option("--lambda", o.lambda, "Task separation ratio");
  app.add_option("--gamma", o.gamma, "Holding fraction of the work cycle");
  app.add_option("--ndof", o.ndof, "Number of joints sharing the pump");
  app.add_option("--autonomy-hours", o.autonomy_hours, "Work cycle duration for battery sizing, h");
  app.add_option("--out", o.out_dir, "Output directory");

  auto* size = app.add_subcommand("size", "Size one topology and print its bill of materials");
  size->add_option("topology", o.topology, "baseline | two-speed | two-speed-ndof | boost | offset | locking")
      ->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep a study parameter; writes CSV and SVG");
  sweep_cmd->add_option("study", o.study, "two-speed | two-speed-ndof | boost | offset | locking")->required();
  sweep_cmd->add_option("--parameter", o.parameter, "lambda | gamma | n_dof | autonomy");
  sweep_cmd->add_option("--metric", o.metric, "total_mass | mean_loss | mass_plus_battery");
  sweep_cmd->add_option("--lo", o.lo, "Range start");
  sweep_cmd->add_option("--hi", o.hi, "Range end");
  sweep_cmd->add_option("--points", o.points, "Grid points");

  auto* sens = app.add_subcommand("sensitivity", "Two-speed crossover vs motor torque density");
  sens->add_option("--multipliers", o.multipliers, "Torque-density multipliers")->delimiter(',');

  auto* fit = app.add_subcommand("fit", "Fit a power law to catalog data (CSV x,y,label)");
  fit->add_option("catalog", o.catalog, "Catalog CSV")->required();

  auto* all = app.add_subcommand("report-all", "Regenerate every study dataset and plot");
  all->add_option("--multipliers", o.multipliers, "Torque-density multipliers")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (o.dump_config) {
      out << dump_config(build_config(o));
      return kOk;
    }
    if (size->parsed()) return cmd_size(o, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
    if (sens->parsed()) return cmd_sensitivity(o, out);
    if (fit->parsed()) return cmd_fit(o, out);
    if (all->parsed()) return cmd_report_all(o, out);
    err << app.help();
    return kUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace hydromm::cli
