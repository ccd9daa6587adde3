#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace giep {

/// Every failure the library reports. The CLI maps these onto exit codes.
enum class ErrorKind {
  BadFormat,
  InvalidArgument,
  DimensionMismatch,
  DegenerateSpectrum,
  MatchingTooSmall,
  ModeMismatch,
  RepeatedEigenvalues,
  NonConvergence,
  IllConditioned,
  SingularSystem,
  DiscViolation,
  StepUnderflow,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised when continuation cannot make progress; carries the furthest
/// homotopy parameter that was accepted.
class StepUnderflowError : public Error {
 public:
  StepUnderflowError(double t_reached, const std::string& what)
      : Error(ErrorKind::StepUnderflow, what), t_reached_(t_reached) {}

  double t_reached() const noexcept { return t_reached_; }

 private:
  double t_reached_;
};

}  // namespace giep
