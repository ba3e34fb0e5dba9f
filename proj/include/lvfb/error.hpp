#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lvfb {

enum class ErrorCode {
  InvalidArgument,
  BoundaryRegime,
  DegenerateDeterminant,
  StepSizeTooLarge,
  ConvergenceFailure,
  InvalidRegime,
  NotInSpeedRange,
  IntegrationFailure,
  BracketFailure,
  NotDiagonallyDominant,
  BoundBreach,
  DomainExhausted,
  FrontRetreat,
  WrongRegime,
  BracketInvalid,
  HorizonExhausted,
  NotSpreading,
  Instability,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code so the
// CLI can map error classes onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lvfb
