#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hydromm/analysis.hpp"
#include "hydromm/component_models.hpp"
#include "hydromm/topologies.hpp"

namespace hydromm {

/// Itemized bill of materials with formula traces; the last line is the total.
void write_text_report(std::ostream& os, const TopologyResult& r);
/// One row per BOM item: component,label,requirement,requirement_units,quantity,unit_mass_kg,mass_kg,extrapolated
void write_bom_csv(std::ostream& os, const TopologyResult& r);
std::string to_json(const TopologyResult& r);

inline constexpr const char* kSweepCsvHeader = "parameter,baseline,multimodal,feasible_baseline,feasible_multimodal";

/// Fixed column order: see kSweepCsvHeader. Infeasible metrics print as "nan".
void write_sweep_csv(std::ostream& os, const SweepResult& r);

struct PlotLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

/// Line plot of both curves with a crossover marker when one exists.
std::string render_sweep_svg(const SweepResult& r, const PlotLabels& labels);

void write_sensitivity_csv(std::ostream& os, const std::vector<SensitivityRow>& rows);

void write_fit_report(std::ostream& os, const FitResult& fit, const std::vector<CatalogPoint>& points);

}  // namespace hydromm
