#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hydromm/component_models.hpp"
#include "hydromm/topologies.hpp"

namespace hydromm {

struct SweepDefaults {
  double lambda_lo = 1.0;
  double lambda_hi = 4.0;
  int lambda_points = 61;
  int gamma_points = 51;

  friend bool operator==(const SweepDefaults&, const SweepDefaults&) = default;
};

/// Everything a CLI run needs: component models, study inputs, sweep grids.
///
/// Text form is sectioned key/value:
///
///     [motor]
///     k_mass = 0.3
///     [study]
///     lambda = 3
///     cycle_hours = none
///
/// Sections: motor, ball_screw, accumulator, pump, cylinder, valve, battery,
/// study, sweep, output. Unknown sections or keys are rejected with the line
/// number. `#` and `;` start comments.
struct StudyConfig {
  ComponentLibrary library;
  StudyParameters params;
  SweepDefaults sweep;
  std::string output_dir = "out";

  friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

StudyConfig parse_config(std::string_view text, std::string_view source = "<config>");
StudyConfig load_config(const std::filesystem::path& path);

/// Applies one `section.key=value` assignment, as given to --set.
void apply_override(StudyConfig& config, std::string_view assignment);

/// Full config in text form; parse_config(dump_config(c)) == c.
std::string dump_config(const StudyConfig& config);

/// Names of every accepted `section.key`, in dump order.
std::vector<std::string> config_keys();

/// Catalog CSV with header `x,y,label`. Malformed rows are collected and
/// reported together, each with its line number.
std::vector<CatalogPoint> parse_catalog_csv(std::string_view text, std::string_view source = "<csv>");
std::vector<CatalogPoint> load_catalog_csv(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace hydromm
