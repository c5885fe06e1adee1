#pragma once

#include <stdexcept>
#include <string>

namespace hydromm {

enum class ErrorKind {
  Domain,      // argument outside the function's domain
  Fit,         // catalog fit could not be computed
  Solver,      // iteration failed to converge
  Infeasible,  // no design satisfies the requirements
  Capability,  // operating point outside component limits
  Config,      // malformed configuration or data file
  Io,          // file system failure
  Units,       // quantity label mismatch
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by solve_ratio when the iteration cap is hit; carries the last residual.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual, int iterations)
      : Error(ErrorKind::Solver, what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace hydromm
