#include "hydromm/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace hydromm {

namespace {

std::string num(double v, int precision = 4) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string fixed(double v, int decimals) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << v;
  return os.str();
}

// Full precision for machine-readable output.
std::string exact(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_text_report(std::ostream& os, const TopologyResult& r) {
  os << "topology: " << to_string(r.topology) << " (study " << to_string(r.study) << ", " << r.n_dof << " DOF)\n";
  for (const auto& [label, sol] : r.drivetrains) {
    os << "drivetrain " << label << ": ratio " << num(sol.ratio) << " (" << to_string(sol.binding)
       << "-bound), motor torque " << num(sol.motor_torque) << " N*m, nominal speed " << num(sol.motor_nominal_speed)
       << " rad/s, rotor inertia " << num(sol.motor_inertia) << " kg*m^2, " << sol.iterations << " iterations\n";
  }
  os << "items:\n";
  for (const auto& item : r.bom.items) {
    os << "  " << std::left << std::setw(12) << item.component << std::setw(14) << item.label << std::right
       << std::setw(10) << num(item.requirement) << ' ' << std::left << std::setw(5) << item.requirement_units
       << std::right << "  " << item.quantity << " x " << fixed(item.unit_mass, 3) << " kg = " << fixed(item.mass(), 3)
       << " kg   [" << item.basis << "]" << (item.extrapolated ? " (extrapolated)" : "") << '\n';
  }
  os << "losses:\n";
  for (const auto& [task, op] : r.per_task_losses) {
    os << "  " << task << " (duty " << fixed(r.duties.at(task), 2) << "): mechanical " << num(op.mechanical_power)
       << " W, joule " << num(op.joule_loss) << " W, transmission " << num(op.transmission_loss) << " W, pump "
       << num(op.pump_loss) << " W, efficiency " << fixed(100.0 * op.efficiency, 1) << " %\n";
  }
  os << "mean cycle loss " << num(r.mean_cycle_loss) << " W\n";
  if (r.battery_mass) os << "battery " << fixed(*r.battery_mass, 3) << " kg\n";
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  if (!r.feasible) os << "INFEASIBLE: " << r.infeasible_reason << '\n';
  os << "total " << fixed(r.total_mass(), 2) << " kg";
  if (r.n_dof > 1) os << " (" << fixed(r.mass_per_dof(), 2) << " kg per DOF)";
  os << '\n';
}

void write_bom_csv(std::ostream& os, const TopologyResult& r) {
  os << "component,label,requirement,requirement_units,quantity,unit_mass_kg,mass_kg,extrapolated\n";
  for (const auto& item : r.bom.items) {
    os << item.component << ',' << item.label << ',' << exact(item.requirement) << ',' << item.requirement_units << ','
       << item.quantity << ',' << exact(item.unit_mass) << ',' << exact(item.mass()) << ','
       << (item.extrapolated ? "true" : "false") << '\n';
  }
  os << "total,,,,,," << exact(r.total_mass()) << ",\n";
}

std::string to_json(const TopologyResult& r) {
  using nlohmann::json;
  json j;
  j["topology"] = std::string(to_string(r.topology));
  j["study"] = std::string(to_string(r.study));
  j["n_dof"] = r.n_dof;
  j["feasible"] = r.feasible;
  if (!r.feasible) j["infeasible_reason"] = r.infeasible_reason;
  json items = json::array();
  for (const auto& item : r.bom.items) {
    items.push_back({{"component", item.component},
                     {"label", item.label},
                     {"requirement", item.requirement},
                     {"requirement_units", item.requirement_units},
                     {"basis", item.basis},
                     {"quantity", item.quantity},
                     {"unit_mass_kg", item.unit_mass},
                     {"mass_kg", item.mass()},
                     {"extrapolated", item.extrapolated}});
  }
  j["items"] = items;
  json drivetrains = json::object();
  for (const auto& [label, sol] : r.drivetrains) {
    drivetrains[label] = {{"ratio", sol.ratio},
                          {"motor_torque_Nm", sol.motor_torque},
                          {"binding", to_string(sol.binding)},
                          {"motor_mass_kg", sol.motor_mass},
                          {"motor_nominal_speed_rad_s", sol.motor_nominal_speed},
                          {"motor_inertia_kgm2", sol.motor_inertia},
                          {"residual", sol.residual},
                          {"iterations", sol.iterations}};
  }
  j["drivetrains"] = drivetrains;
  json losses = json::object();
  for (const auto& [task, op] : r.per_task_losses) {
    losses[task] = {{"duty", r.duties.at(task)},
                    {"mechanical_power_W", op.mechanical_power},
                    {"joule_loss_W", op.joule_loss},
                    {"transmission_loss_W", op.transmission_loss},
                    {"pump_loss_W", op.pump_loss},
                    {"total_input_power_W", op.total_input_power},
                    {"efficiency", op.efficiency}};
  }
  j["losses"] = losses;
  j["mean_cycle_loss_W"] = r.mean_cycle_loss;
  if (r.battery_mass) j["battery_mass_kg"] = *r.battery_mass;
  j["notes"] = r.notes;
  j["total_mass_kg"] = r.total_mass();
  j["mass_per_dof_kg"] = r.mass_per_dof();
  return j.dump(2);
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  os << kSweepCsvHeader << '\n';
  for (const auto& row : r.rows) {
    os << exact(row.parameter) << ',' << exact(row.baseline) << ',' << exact(row.multimodal) << ','
       << (row.feasible_baseline ? "true" : "false") << ',' << (row.feasible_multimodal ? "true" : "false") << '\n';
  }
}

std::string render_sweep_svg(const SweepResult& r, const PlotLabels& labels) {
  constexpr double width = 640.0;
  constexpr double height = 420.0;
  constexpr double left = 70.0;
  constexpr double right = 20.0;
  constexpr double top = 40.0;
  constexpr double bottom = 60.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_lo = r.spec.lo;
  double x_hi = r.spec.hi;
  if (!r.rows.empty()) {
    x_lo = r.rows.front().parameter;
    x_hi = r.rows.back().parameter;
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  double y_lo = std::numeric_limits<double>::infinity();
  double y_hi = -y_lo;
  for (const auto& row : r.rows) {
    for (double v : {row.baseline, row.multimodal}) {
      if (std::isfinite(v)) {
        y_lo = std::min(y_lo, v);
        y_hi = std::max(y_hi, v);
      }
    }
  }
  if (!std::isfinite(y_lo)) {
    y_lo = 0.0;
    y_hi = 1.0;
  }
  y_lo = std::min(0.0, y_lo);
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  y_hi += 0.05 * (y_hi - y_lo);

  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h; };

  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(labels.title)
     << "</text>\n";

  // axes and ticks
  os << "<g stroke=\"#444\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\"" << top + plot_h
     << "\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n";
  os << "</g>\n";
  constexpr int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / ticks;
    const double yv = y_lo + (y_hi - y_lo) * i / ticks;
    os << "<line x1=\"" << px(xv) << "\" y1=\"" << top + plot_h << "\" x2=\"" << px(xv) << "\" y2=\""
       << top + plot_h + 5 << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << px(xv) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">" << num(xv, 3)
       << "</text>\n";
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << left << "\" y2=\"" << py(yv)
       << "\" stroke=\"#444\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << num(yv, 3)
       << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
     << xml_escape(labels.x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << top + plot_h / 2 << ")\">" << xml_escape(labels.y_label) << "</text>\n";

  // curves, broken at infeasible or non-finite rows
  auto curve = [&](bool baseline, const char* color) {
    std::vector<std::string> segments;
    std::ostringstream seg;
    seg << std::fixed << std::setprecision(2);
    int n = 0;
    auto flush = [&] {
      if (n >= 2) segments.push_back(seg.str());
      seg.str("");
      n = 0;
    };
    for (const auto& row : r.rows) {
      const double v = baseline ? row.baseline : row.multimodal;
      const bool ok = (baseline ? row.feasible_baseline : row.feasible_multimodal) && std::isfinite(v);
      if (!ok) {
        flush();
        continue;
      }
      seg << (n ? " " : "") << px(row.parameter) << ',' << py(v);
      ++n;
    }
    flush();
    for (const auto& s : segments) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"" << s << "\"/>\n";
    }
  };
  curve(true, "black");
  curve(false, "#1f5fbf");

  if (r.crossover) {
    const double cx = px(r.crossover->value);
    os << "<line x1=\"" << cx << "\" y1=\"" << top << "\" x2=\"" << cx << "\" y2=\"" << top + plot_h
       << "\" stroke=\"#c03030\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << cx + 4 << "\" y=\"" << top + 14 << "\" fill=\"#c03030\">crossover " << num(r.crossover->value)
       << "</text>\n";
  }

  os << "<g font-size=\"11\">\n";
  os << "<line x1=\"" << left + plot_w - 150 << "\" y1=\"" << top + 10 << "\" x2=\"" << left + plot_w - 125
     << "\" y2=\"" << top + 10 << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  os << "<text x=\"" << left + plot_w - 120 << "\" y=\"" << top + 14 << "\">baseline</text>\n";
  os << "<line x1=\"" << left + plot_w - 150 << "\" y1=\"" << top + 26 << "\" x2=\"" << left + plot_w - 125
     << "\" y2=\"" << top + 26 << "\" stroke=\"#1f5fbf\" stroke-width=\"2\"/>\n";
  os << "<text x=\"" << left + plot_w - 120 << "\" y=\"" << top + 30 << "\">"
     << xml_escape(std::string(to_string(multimodal_of(r.spec.study)))) << "</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

void write_sensitivity_csv(std::ostream& os, const std::vector<SensitivityRow>& rows) {
  os << "multiplier,crossover_lambda,bracket_lo,bracket_hi,scan_hi\n";
  for (const auto& row : rows) {
    os << exact(row.multiplier) << ',';
    if (row.crossover) {
      os << exact(row.crossover->value) << ',' << exact(row.crossover->lo) << ',' << exact(row.crossover->hi);
    } else {
      os << "none,,";
    }
    os << ',' << exact(row.scan_hi) << '\n';
  }
}

void write_fit_report(std::ostream& os, const FitResult& fit, const std::vector<CatalogPoint>& points) {
  os << "fitted law: y = k * x^a\n";
  os << "  k  = " << num(fit.law.k, 6) << '\n';
  os << "  a  = " << num(fit.law.a, 6) << '\n';
  os << "  R^2 (log-log) = " << num(fit.r_squared, 6) << '\n';
  if (fit.law.fitted_range) {
    os << "  data range x in [" << num(fit.law.fitted_range->lo) << ", " << num(fit.law.fitted_range->hi) << "]\n";
  }
  os << "residuals:\n";
  os << "  " << std::left << std::setw(16) << "label" << std::right << std::setw(12) << "x" << std::setw(12) << "y"
     << std::setw(12) << "fitted" << std::setw(12) << "rel. err %" << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const double fitted = fit.law.k * std::pow(p.x, fit.law.a);
    os << "  " << std::left << std::setw(16) << p.label << std::right << std::setw(12) << num(p.x) << std::setw(12)
       << num(p.y) << std::setw(12) << num(fitted) << std::setw(12) << fixed(100.0 * (p.y - fitted) / fitted, 3)
       << '\n';
  }
}

}  // namespace hydromm
