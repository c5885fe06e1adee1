#include "hydromm/error.hpp"

namespace hydromm {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Fit: return "fit";
    case ErrorKind::Solver: return "solver";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Capability: return "capability";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    case ErrorKind::Units: return "units";
  }
  return "unknown";
}

}  // namespace hydromm
