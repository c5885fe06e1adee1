#pragma once

#include <optional>
#include <string>

namespace hydromm {

/// A named physical quantity with its units, e.g. {"motor_torque", "N*m"}.
struct Quantity {
  std::string name;
  std::string units;

  friend bool operator==(const Quantity&, const Quantity&) = default;
};

/// A value tagged with the quantity it measures.
struct Measure {
  std::string_view quantity;
  double value = 0.0;
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  friend bool operator==(const Range&, const Range&) = default;
};

/// Power law y = k * x^a relating two quantities.
///
/// `fitted_range` is the span of the catalog data the law was derived from.
/// Evaluation outside it is allowed but reported as an extrapolation.
struct ScalingLaw {
  double k = 1.0;
  double a = 0.0;
  Quantity input;
  Quantity output;
  std::optional<Range> fitted_range;

  void validate() const;

  friend bool operator==(const ScalingLaw&, const ScalingLaw&) = default;
};

struct LawEvaluation {
  double value = 0.0;
  bool extrapolated = false;
};

/// k * x^a. Throws Domain for x <= 0 or non-finite x.
double eval_law(const ScalingLaw& law, double x);

/// Same as above, but rejects a measure of the wrong quantity with ErrorKind::Units.
double eval_law(const ScalingLaw& law, Measure x);

/// Evaluation with the extrapolation flag attached.
LawEvaluation evaluate(const ScalingLaw& law, Measure x);

/// Copy of `law` with k multiplied by `factor`.
ScalingLaw scale_coefficient(ScalingLaw law, double factor);

namespace quantity {
inline const Quantity motor_torque{"motor_torque", "N*m"};
inline const Quantity motor_mass{"motor_mass", "kg"};
inline const Quantity motor_speed{"motor_nominal_speed", "rad/s"};
inline const Quantity rotor_inertia{"rotor_inertia", "kg*m^2"};
inline const Quantity force{"force", "N"};
inline const Quantity force_density{"force_density", "N/kg"};
inline const Quantity displaced_volume{"displaced_volume", "L"};
inline const Quantity accumulator_mass{"accumulator_mass", "kg"};
inline const Quantity power{"power", "W"};
inline const Quantity power_density{"power_density", "W/kg"};
}  // namespace quantity

}  // namespace hydromm
