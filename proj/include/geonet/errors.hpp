#pragma once

#include <stdexcept>
#include <string>

namespace geonet {

/// Exit codes shared by the CLI and anything that maps errors to processes.
enum class ExitCode : int {
  ok = 0,
  validation = 2,
  non_convergence = 3,
  io = 4,
};

/// Base for all library errors. Carries the exit code the CLI should report.
class Error : public std::runtime_error {
public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

private:
  ExitCode code_;
};

/// Bad input: malformed rows, violated preconditions, inconsistent sizes.
class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error(ExitCode::validation, what) {}
};

/// An iterative solver hit its cap before meeting tolerance.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double best_estimate, double residual)
      : Error(ExitCode::non_convergence, what), best_estimate_(best_estimate), residual_(residual) {}
  double best_estimate() const noexcept { return best_estimate_; }
  double residual() const noexcept { return residual_; }

private:
  double best_estimate_;
  double residual_;
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(ExitCode::io, what) {}
};

/// Broken internal invariant (e.g. two independent connectivity checks disagree).
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace geonet
