#include <sstream>
#include <string>

#include "doctest.h"
#include "hydromm/report.hpp"
#include "json.hpp"

using namespace hydromm;

namespace {

std::string last_line(const std::string& text) {
  std::string t = text;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') + 1);
}

int count(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("text report ends with the total") {
  std::ostringstream os;
  write_text_report(os, eval_baseline({}));
  CHECK(last_line(os.str()) == "total 4.41 kg");
  CHECK(os.str().find("inertia-bound") != std::string::npos);

  StudyParameters p;
  p.n_dof = 4;
  std::ostringstream ndof;
  write_text_report(ndof, eval_two_speed_ndof(p));
  CHECK(last_line(ndof.str()).find("kg per DOF)") != std::string::npos);
  CHECK(ndof.str().find("note: ") != std::string::npos);
}

TEST_CASE("infeasible designs say so") {
  StudyParameters p;
  p.base_torque = 150.0;
  std::ostringstream os;
  write_text_report(os, eval_baseline(p));
  CHECK(os.str().find("INFEASIBLE") != std::string::npos);
}

TEST_CASE("BOM CSV columns and total") {
  const TopologyResult r = eval_two_speed_1dof({});
  std::ostringstream os;
  write_bom_csv(os, r);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "component,label,requirement,requirement_units,quantity,unit_mass_kg,mass_kg,extrapolated");
  int rows = 0;
  for (std::string next; std::getline(in, next); line = next) {
    CHECK(count(next, ",") == 7);
    ++rows;
  }
  CHECK(rows == static_cast<int>(r.bom.items.size()) + 1);
  CHECK(line.rfind("total,", 0) == 0);
  CHECK(std::stod(line.substr(6 + 5)) == doctest::Approx(r.total_mass()).epsilon(1e-15));
}

TEST_CASE("JSON report parses back") {
  StudyParameters p;
  p.cycle_hours = 1.0;
  const TopologyResult r = eval_accumulator_offset(p);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["topology"] == "offset");
  CHECK(j["feasible"] == true);
  CHECK(j["total_mass_kg"].get<double>() == r.total_mass());
  CHECK(j["items"].size() == r.bom.items.size());
  CHECK(j["drivetrains"]["M2"]["binding"] == "speed");
  CHECK(j.contains("battery_mass_kg"));
  CHECK(j["notes"].size() == r.notes.size());
}

TEST_CASE("sweep CSV golden header and exact values") {
  SweepSpec spec;
  spec.points = 4;
  const SweepResult r = sweep(spec, {});
  std::ostringstream os;
  write_sweep_csv(os, r);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "parameter,baseline,multimodal,feasible_baseline,feasible_multimodal");
  CHECK(std::string(kSweepCsvHeader) == line);
  std::getline(in, line);
  CHECK(line.rfind("1,", 0) == 0);
  const double baseline = std::stod(line.substr(2));
  CHECK(baseline == r.rows[0].baseline);  // max_digits10 round-trips
  CHECK(line.substr(line.size() - 10) == ",true,true");
}

TEST_CASE("infeasible metrics print as nan") {
  SweepResult r;
  r.spec = {};
  r.rows.push_back({1.0, std::numeric_limits<double>::quiet_NaN(), 2.0, false, true, "x", ""});
  std::ostringstream os;
  write_sweep_csv(os, r);
  CHECK(os.str().find("1,nan,2,false,true") != std::string::npos);
}

TEST_CASE("SVG plot") {
  const SweepResult r = sweep({}, {});
  const std::string svg = render_sweep_svg(r, {"Mass <vs> lambda", "lambda", "kg"});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count(svg, "<polyline") == 2);
  CHECK(svg.find("crossover") != std::string::npos);
  CHECK(svg.find("Mass &lt;vs&gt; lambda") != std::string::npos);
  CHECK(svg.find("two-speed") != std::string::npos);
  CHECK(render_sweep_svg(r, {"t", "x", "y"}) == render_sweep_svg(r, {"t", "x", "y"}));

  SweepResult broken = r;
  broken.rows[30].feasible_multimodal = false;
  CHECK(count(render_sweep_svg(broken, {"t", "x", "y"}), "<polyline") == 3);
}

TEST_CASE("sensitivity CSV marks absent crossovers") {
  std::vector<SensitivityRow> rows{{1.0, Crossover{1.7, 1.5, 1.75}, 50.0}, {4.0, std::nullopt, 50.0}};
  std::ostringstream os;
  write_sensitivity_csv(os, rows);
  CHECK(os.str() == "multiplier,crossover_lambda,bracket_lo,bracket_hi,scan_hi\n1,1.7,1.5,1.75,50\n4,none,,,50\n");
}

TEST_CASE("fit report") {
  const std::vector<CatalogPoint> pts{{1.0, 2.0, "a"}, {4.0, 8.0, "b"}};
  const FitResult fit = fit_scaling_law(pts);
  std::ostringstream os;
  write_fit_report(os, fit, pts);
  CHECK(os.str().find("k  = 2\n") != std::string::npos);
  CHECK(os.str().find("a  = 1\n") != std::string::npos);
}
