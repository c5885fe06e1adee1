#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "hydromm/config.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using hydromm::cli::run;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run hydromm_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string last_line(std::string t) {
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.rfind('\n') + 1);
}

// Fresh scratch directory per test, removed on exit.
struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name) : path(fs::temp_directory_path() / ("hydromm_test_" + name)) {
    fs::remove_all(path);
  }
  ~ScratchDir() { fs::remove_all(path); }
};

const fs::path kData = HYDROMM_TEST_DATA_DIR;

}  // namespace

TEST_CASE("size baseline prints the total last") {
  const Run r = hydromm_cli({"size", "baseline"});
  CHECK(r.code == 0);
  CHECK(last_line(r.out) == "total 4.41 kg");
}

TEST_CASE("--set scales the motor mass law") {
  const Run base = hydromm_cli({"size", "baseline", "--format", "json"});
  const Run heavy = hydromm_cli({"size", "baseline", "--set", "motor.k_mass=1.2", "--format", "json"});
  REQUIRE(base.code == 0);
  REQUIRE(heavy.code == 0);
  auto motor_mass = [](const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    for (const auto& item : j["items"])
      if (item["component"] == "motor") return item["mass_kg"].get<double>();
    return 0.0;
  };
  CHECK(motor_mass(heavy.out) == doctest::Approx(4.0 * motor_mass(base.out)).epsilon(1e-12));
}

TEST_CASE("size two-speed: two light motors") {
  const Run r = hydromm_cli({"size", "two-speed", "--format", "json"});
  REQUIRE(r.code == 0);
  int motors = 0;
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& item : j["items"]) {
    if (item["component"] != "motor") continue;
    ++motors;
    CHECK(item["mass_kg"].get<double>() == doctest::Approx(0.38).epsilon(0.01));
  }
  CHECK(motors == 2);
}

TEST_CASE("size honours global flags in any position") {
  const Run a = hydromm_cli({"--lambda", "2", "size", "two-speed"});
  const Run b = hydromm_cli({"size", "two-speed", "--lambda", "2"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != hydromm_cli({"size", "two-speed"}).out);

  const Run strict = hydromm_cli({"size", "two-speed-ndof", "--ndof", "3", "--paper-strict"});
  CHECK(strict.code == 0);
  CHECK(strict.out.find("pump drive motor excluded") != std::string::npos);
}

TEST_CASE("size CSV output") {
  const Run r = hydromm_cli({"size", "offset", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("component,label,", 0) == 0);
  CHECK(last_line(r.out).rfind("total,", 0) == 0);
}

TEST_CASE("infeasible designs exit 2") {
  const Run r = hydromm_cli({"size", "baseline", "--set", "study.base_torque=150"});
  CHECK(r.code == 2);
  CHECK(r.out.find("INFEASIBLE") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(hydromm_cli({}).code == 1);
  CHECK(hydromm_cli({"size"}).code == 1);
  CHECK(hydromm_cli({"size", "hexapod"}).code == 1);
  CHECK(hydromm_cli({"size", "baseline", "--format", "xml"}).code == 1);
  CHECK(hydromm_cli({"size", "baseline", "--lambda", "0.2"}).code == 1);
  CHECK(hydromm_cli({"size", "baseline", "--set", "motor.nope=1"}).code == 1);
  CHECK(hydromm_cli({"frobnicate"}).code == 1);
  const Run help = hydromm_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("report-all") != std::string::npos);
}

TEST_CASE("sweep writes CSV and SVG") {
  ScratchDir dir("sweep");
  const Run r = hydromm_cli({"sweep", "two-speed", "--out", dir.path.string(), "--points", "31"});
  REQUIRE(r.code == 0);
  const fs::path csv = dir.path / "two-speed_lambda_total_mass.csv";
  CHECK(fs::exists(csv));
  CHECK(fs::exists(dir.path / "two-speed_lambda_total_mass.svg"));
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "parameter,baseline,multimodal,feasible_baseline,feasible_multimodal");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 31);
  CHECK(r.out.find("crossover lambda*") != std::string::npos);
}

TEST_CASE("sweep with an empty range writes nothing") {
  ScratchDir dir("empty");
  const Run r = hydromm_cli({"sweep", "two-speed", "--lo", "3", "--hi", "2", "--out", dir.path.string()});
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
  CHECK_FALSE(fs::exists(dir.path));
}

TEST_CASE("sweep rejects parameters a study does not use") {
  ScratchDir dir("wrongparam");
  CHECK(hydromm_cli({"sweep", "two-speed", "--parameter", "gamma", "--out", dir.path.string()}).code == 1);
  CHECK_FALSE(fs::exists(dir.path));
}

TEST_CASE("sweep locking over autonomy") {
  ScratchDir dir("autonomy");
  const Run r = hydromm_cli({"sweep", "locking", "--parameter", "autonomy", "--metric", "mass_plus_battery",
                             "--gamma", "0.5", "--out", dir.path.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir.path / "locking_autonomy_mass_plus_battery.csv"));
}

TEST_CASE("unwritable output directory exits 3") {
  ScratchDir dir("blocked");
  fs::create_directories(dir.path);
  std::ofstream(dir.path / "file") << "x";
  const Run r = hydromm_cli({"sweep", "two-speed", "--out", (dir.path / "file" / "sub").string()});
  CHECK(r.code == 3);
}

TEST_CASE("fit recovers the catalog law") {
  const Run r = hydromm_cli({"fit", (kData / "motor_catalog.csv").string(), "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["k"].get<double>() == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(j["a"].get<double>() == doctest::Approx(0.71).epsilon(1e-9));
  CHECK(j["r_squared"].get<double>() == doctest::Approx(1.0));

  const Run text = hydromm_cli({"fit", (kData / "motor_catalog.csv").string()});
  CHECK(text.out.find("xlarge") != std::string::npos);
}

TEST_CASE("fit error paths") {
  const Run bad = hydromm_cli({"fit", (kData / "bad_catalog.csv").string()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find(":3:") != std::string::npos);
  CHECK(bad.err.find(":4:") != std::string::npos);
  CHECK(bad.err.find(":5:") != std::string::npos);
  CHECK(hydromm_cli({"fit", "/nonexistent/catalog.csv"}).code == 3);
}

TEST_CASE("sensitivity") {
  const Run r = hydromm_cli({"sensitivity", "--multipliers", "1,4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("x1: crossover lambda* = 1.69") != std::string::npos);
  CHECK(r.out.find("x4: no crossover") != std::string::npos);
  const Run csv = hydromm_cli({"sensitivity", "--multipliers", "2", "--format", "csv"});
  CHECK(csv.out.rfind("multiplier,crossover_lambda", 0) == 0);
}

TEST_CASE("dump-config round-trips through --config") {
  ScratchDir dir("config");
  fs::create_directories(dir.path);
  const Run dumped = hydromm_cli({"--dump-config", "--set", "motor.k_mass=0.25", "--lambda", "2.5"});
  REQUIRE(dumped.code == 0);
  const fs::path file = dir.path / "study.ini";
  std::ofstream(file) << dumped.out;
  const Run again = hydromm_cli({"--dump-config", "--config", file.string()});
  CHECK(again.code == 0);
  CHECK(again.out == dumped.out);
  CHECK(hydromm::parse_config(again.out).params.lambda == 2.5);

  const Run sized = hydromm_cli({"size", "two-speed", "--config", file.string()});
  const Run direct = hydromm_cli({"size", "two-speed", "--set", "motor.k_mass=0.25", "--lambda", "2.5"});
  CHECK(sized.out == direct.out);

  std::ofstream(file, std::ios::app) << "[study]\nwibble = 1\n";
  const Run broken = hydromm_cli({"size", "baseline", "--config", file.string()});
  CHECK(broken.code == 1);
  CHECK(broken.err.find("wibble") != std::string::npos);
}

TEST_CASE("report-all writes every dataset") {
  ScratchDir dir("all");
  const Run r = hydromm_cli({"report-all", "--out", dir.path.string(), "--multipliers", "1,2"});
  REQUIRE(r.code == 0);
  for (const char* stem : {"two_speed_mass", "two_speed_ndof_mass", "two_speed_task1_loss", "two_speed_ndof_task1_loss",
                           "boost_mass", "offset_mass", "locking_loss", "locking_mass_1h", "locking_mass_10min"}) {
    CHECK_MESSAGE(fs::exists(dir.path / (std::string(stem) + ".csv")), stem);
    CHECK_MESSAGE(fs::exists(dir.path / (std::string(stem) + ".svg")), stem);
  }
  CHECK(fs::exists(dir.path / "sensitivity.csv"));
}
