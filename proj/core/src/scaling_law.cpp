#include "hydromm/scaling_law.hpp"

#include <cmath>
#include <sstream>

#include "hydromm/error.hpp"

namespace hydromm {

void ScalingLaw::validate() const {
  require(std::isfinite(k) && k > 0.0, ErrorKind::Domain,
          "scaling law for " + output.name + ": k must be positive");
  require(std::isfinite(a), ErrorKind::Domain, "scaling law for " + output.name + ": a must be finite");
  if (fitted_range) {
    require(fitted_range->lo > 0.0 && fitted_range->lo <= fitted_range->hi, ErrorKind::Domain,
            "scaling law for " + output.name + ": invalid fitted range");
  }
}

double eval_law(const ScalingLaw& law, double x) {
  if (!(std::isfinite(x) && x > 0.0)) {
    std::ostringstream msg;
    msg << "scaling law " << law.output.name << "(" << law.input.name << "): input must be > 0, got " << x;
    fail(ErrorKind::Domain, msg.str());
  }
  return law.k * std::pow(x, law.a);
}

double eval_law(const ScalingLaw& law, Measure x) {
  if (x.quantity != law.input.name) {
    fail(ErrorKind::Units, "scaling law " + law.output.name + " expects " + law.input.name + ", got " +
                               std::string(x.quantity));
  }
  return eval_law(law, x.value);
}

LawEvaluation evaluate(const ScalingLaw& law, Measure x) {
  const double y = eval_law(law, x);
  const bool outside = law.fitted_range && !law.fitted_range->contains(x.value);
  return {y, outside};
}

ScalingLaw scale_coefficient(ScalingLaw law, double factor) {
  require(std::isfinite(factor) && factor > 0.0, ErrorKind::Domain, "coefficient scale factor must be positive");
  law.k *= factor;
  return law;
}

}  // namespace hydromm
