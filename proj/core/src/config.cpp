#include "hydromm/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "hydromm/error.hpp"

namespace hydromm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

bool parse_double(std::string_view s, double& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, int& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

struct Field {
  std::string section;
  std::string key;
  // returns an error message, empty on success
  std::function<std::string(StudyConfig&, std::string_view)> set;
  std::function<std::string(const StudyConfig&)> get;
};

template <class Access>
Field number(std::string section, std::string key, Access access) {
  return {std::move(section), std::move(key),
          [access](StudyConfig& c, std::string_view v) -> std::string {
            double d = 0.0;
            if (!parse_double(v, d)) return "expected a number, got '" + std::string(v) + "'";
            access(c) = d;
            return {};
          },
          [access](const StudyConfig& c) { return format_double(access(c)); }};
}

template <class Access>
Field integer(std::string section, std::string key, Access access) {
  return {std::move(section), std::move(key),
          [access](StudyConfig& c, std::string_view v) -> std::string {
            int i = 0;
            if (!parse_int(v, i)) return "expected an integer, got '" + std::string(v) + "'";
            access(c) = i;
            return {};
          },
          [access](const StudyConfig& c) { return std::to_string(access(c)); }};
}

template <class Access>
Field optional_number(std::string section, std::string key, Access access) {
  return {std::move(section), std::move(key),
          [access](StudyConfig& c, std::string_view v) -> std::string {
            if (v == "none") {
              access(c).reset();
              return {};
            }
            double d = 0.0;
            if (!parse_double(v, d)) return "expected a number or 'none', got '" + std::string(v) + "'";
            access(c) = d;
            return {};
          },
          [access](const StudyConfig& c) { return access(c) ? format_double(*access(c)) : std::string("none"); }};
}

template <class Access>
Field boolean(std::string section, std::string key, Access access) {
  return {std::move(section), std::move(key),
          [access](StudyConfig& c, std::string_view v) -> std::string {
            if (v == "true") access(c) = true;
            else if (v == "false") access(c) = false;
            else return "expected true or false, got '" + std::string(v) + "'";
            return {};
          },
          [access](const StudyConfig& c) { return std::string(access(c) ? "true" : "false"); }};
}

template <class Access>
Field text(std::string section, std::string key, Access access) {
  return {std::move(section), std::move(key),
          [access](StudyConfig& c, std::string_view v) -> std::string {
            if (v.empty()) return "expected a non-empty value";
            access(c) = std::string(v);
            return {};
          },
          [access](const StudyConfig& c) { return access(c); }};
}

// clang-format off
const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      number("motor", "k_mass", [](auto& c) -> auto& { return c.library.motor.mass_law.k; }),
      number("motor", "a_mass", [](auto& c) -> auto& { return c.library.motor.mass_law.a; }),
      number("motor", "k_speed", [](auto& c) -> auto& { return c.library.motor.speed_law.k; }),
      number("motor", "a_speed", [](auto& c) -> auto& { return c.library.motor.speed_law.a; }),
      number("motor", "k_inertia", [](auto& c) -> auto& { return c.library.motor.inertia_law.k; }),
      number("motor", "a_inertia", [](auto& c) -> auto& { return c.library.motor.inertia_law.a; }),
      number("motor", "peak_torque_factor", [](auto& c) -> auto& { return c.library.motor.peak_torque_factor; }),
      number("motor", "rated_efficiency", [](auto& c) -> auto& { return c.library.motor.rated_efficiency; }),

      number("ball_screw", "k_force_density", [](auto& c) -> auto& { return c.library.ball_screw.force_density_law.k; }),
      number("ball_screw", "a_force_density", [](auto& c) -> auto& { return c.library.ball_screw.force_density_law.a; }),
      number("ball_screw", "efficiency", [](auto& c) -> auto& { return c.library.ball_screw.efficiency; }),

      number("accumulator", "k_mass", [](auto& c) -> auto& { return c.library.accumulator.mass_law.k; }),
      number("accumulator", "a_mass", [](auto& c) -> auto& { return c.library.accumulator.mass_law.a; }),
      number("accumulator", "max_compression_ratio", [](auto& c) -> auto& { return c.library.accumulator.max_compression_ratio; }),
      number("accumulator", "max_pressure", [](auto& c) -> auto& { return c.library.accumulator.max_pressure; }),

      number("pump", "k_power_density", [](auto& c) -> auto& { return c.library.pump.power_density_law.k; }),
      number("pump", "a_power_density", [](auto& c) -> auto& { return c.library.pump.power_density_law.a; }),
      number("pump", "efficiency", [](auto& c) -> auto& { return c.library.pump.efficiency; }),
      number("pump", "max_pressure", [](auto& c) -> auto& { return c.library.pump.max_pressure; }),
      number("pump", "shaft_speed", [](auto& c) -> auto& { return c.library.pump.shaft_speed; }),

      number("cylinder", "mass", [](auto& c) -> auto& { return c.library.cylinder.mass; }),
      number("cylinder", "stroke", [](auto& c) -> auto& { return c.library.cylinder.stroke; }),
      number("cylinder", "max_force", [](auto& c) -> auto& { return c.library.cylinder.max_force; }),
      number("cylinder", "effective_radius", [](auto& c) -> auto& { return c.library.cylinder.effective_radius; }),
      number("cylinder", "rated_pressure", [](auto& c) -> auto& { return c.library.cylinder.rated_pressure; }),

      number("valve", "body_mass", [](auto& c) -> auto& { return c.library.valve.body_mass; }),
      number("valve", "actuation_mass", [](auto& c) -> auto& { return c.library.valve.actuation_mass; }),
      number("valve", "inner_diameter", [](auto& c) -> auto& { return c.library.valve.inner_diameter; }),
      number("valve", "rated_pressure", [](auto& c) -> auto& { return c.library.valve.rated_pressure; }),
      number("valve", "breakaway_torque", [](auto& c) -> auto& { return c.library.valve.breakaway_torque; }),
      number("valve", "opening_time", [](auto& c) -> auto& { return c.library.valve.opening_time; }),
      number("valve", "opening_angle", [](auto& c) -> auto& { return c.library.valve.opening_angle; }),

      number("battery", "specific_energy", [](auto& c) -> auto& { return c.library.battery.specific_energy; }),

      number("study", "lambda", [](auto& c) -> auto& { return c.params.lambda; }),
      integer("study", "n_dof", [](auto& c) -> auto& { return c.params.n_dof; }),
      number("study", "base_torque", [](auto& c) -> auto& { return c.params.base_torque; }),
      number("study", "base_speed", [](auto& c) -> auto& { return c.params.base_speed; }),
      number("study", "inertia_bound", [](auto& c) -> auto& { return c.params.inertia_bound; }),
      number("study", "gamma", [](auto& c) -> auto& { return c.params.gamma; }),
      number("study", "task1_duty", [](auto& c) -> auto& { return c.params.task1_duty; }),
      optional_number("study", "cycle_hours", [](auto& c) -> auto& { return c.params.cycle_hours; }),
      optional_number("study", "pump_power", [](auto& c) -> auto& { return c.params.pump_power; }),
      number("study", "default_fill_power", [](auto& c) -> auto& { return c.params.default_fill_power; }),
      number("study", "accumulator_volume", [](auto& c) -> auto& { return c.params.accumulator_volume; }),
      number("study", "design_pressure", [](auto& c) -> auto& { return c.params.design_pressure; }),
      boolean("study", "include_pump_drive_motor", [](auto& c) -> auto& { return c.params.include_pump_drive_motor; }),

      number("sweep", "lambda_lo", [](auto& c) -> auto& { return c.sweep.lambda_lo; }),
      number("sweep", "lambda_hi", [](auto& c) -> auto& { return c.sweep.lambda_hi; }),
      integer("sweep", "lambda_points", [](auto& c) -> auto& { return c.sweep.lambda_points; }),
      integer("sweep", "gamma_points", [](auto& c) -> auto& { return c.sweep.gamma_points; }),

      text("output", "dir", [](auto& c) -> auto& { return c.output_dir; }),
  };
  return table;
}
// clang-format on

const Field* find_field(std::string_view section, std::string_view key) {
  for (const auto& f : fields())
    if (f.section == section && f.key == key) return &f;
  return nullptr;
}

bool known_section(std::string_view section) {
  return std::any_of(fields().begin(), fields().end(), [&](const Field& f) { return f.section == section; });
}

void validate_config(const StudyConfig& c, std::string_view source) {
  try {
    c.library.validate();
    c.params.validate();
    require(c.sweep.lambda_lo >= 1.0 && c.sweep.lambda_lo < c.sweep.lambda_hi, ErrorKind::Domain,
            "sweep.lambda_lo must be >= 1 and below sweep.lambda_hi");
    require(c.sweep.lambda_points >= 2 && c.sweep.gamma_points >= 2, ErrorKind::Domain, "sweep grids need >= 2 points");
  } catch (const Error& e) {
    fail(ErrorKind::Config, std::string(source) + ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.push_back(f.section + "." + f.key);
  return keys;
}

StudyConfig parse_config(std::string_view text, std::string_view source) {
  StudyConfig config;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    const auto comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    auto where = [&] { return std::string(source) + ":" + std::to_string(line_no) + ": "; };
    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorKind::Config, where() + "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_section(section)) fail(ErrorKind::Config, where() + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(ErrorKind::Config, where() + "expected key = value");
    if (section.empty()) fail(ErrorKind::Config, where() + "key outside of any section");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const Field* field = find_field(section, key);
    if (!field) fail(ErrorKind::Config, where() + "unknown key '" + std::string(key) + "' in [" + section + "]");
    if (auto err = field->set(config, value); !err.empty()) {
      fail(ErrorKind::Config, where() + section + "." + std::string(key) + ": " + err);
    }
  }
  validate_config(config, source);
  return config;
}

StudyConfig load_config(const std::filesystem::path& path) { return parse_config(read_text_file(path), path.string()); }

void apply_override(StudyConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq) {
    fail(ErrorKind::Config, "--set expects section.key=value, got '" + std::string(assignment) + "'");
  }
  const std::string_view section = trim(assignment.substr(0, dot));
  const std::string_view key = trim(assignment.substr(dot + 1, eq - dot - 1));
  const std::string_view value = trim(assignment.substr(eq + 1));
  const Field* field = find_field(section, key);
  if (!field) {
    fail(ErrorKind::Config, "--set: unknown key '" + std::string(section) + "." + std::string(key) + "'");
  }
  StudyConfig updated = config;
  if (auto err = field->set(updated, value); !err.empty()) {
    fail(ErrorKind::Config, "--set " + std::string(section) + "." + std::string(key) + ": " + err);
  }
  validate_config(updated, "--set " + std::string(assignment));
  config = std::move(updated);
}

std::string dump_config(const StudyConfig& config) {
  std::ostringstream os;
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) os << '\n';
      section = f.section;
      os << '[' << section << "]\n";
    }
    os << f.key << " = " << f.get(config) << '\n';
  }
  return os.str();
}

std::vector<CatalogPoint> parse_catalog_csv(std::string_view text, std::string_view source) {
  std::vector<CatalogPoint> points;
  std::vector<std::string> problems;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    auto problem = [&](const std::string& what) {
      problems.push_back(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
    };
    if (!header_seen) {
      header_seen = true;
      if (line != "x,y,label") problem("expected header 'x,y,label'");
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos) {
      problem("expected 3 columns x,y,label");
      continue;
    }
    CatalogPoint p;
    const auto xs = trim(line.substr(0, c1));
    const auto ys = trim(line.substr(c1 + 1, c2 - c1 - 1));
    p.label = std::string(trim(line.substr(c2 + 1)));
    if (!parse_double(xs, p.x) || !parse_double(ys, p.y)) {
      problem("x and y must be numbers");
      continue;
    }
    if (!(p.x > 0.0 && p.y > 0.0)) {
      problem("x and y must be positive");
      continue;
    }
    points.push_back(std::move(p));
  }
  if (!header_seen) problems.push_back(std::string(source) + ": empty catalog file");
  if (!problems.empty()) {
    std::string msg = "malformed catalog:";
    for (const auto& p : problems) msg += "\n  " + p;
    fail(ErrorKind::Config, msg);
  }
  return points;
}

std::vector<CatalogPoint> load_catalog_csv(const std::filesystem::path& path) {
  return parse_catalog_csv(read_text_file(path), path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace hydromm
