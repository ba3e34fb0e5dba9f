#include "lvfb/error.hpp"

namespace lvfb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BoundaryRegime: return "BoundaryRegime";
    case ErrorCode::DegenerateDeterminant: return "DegenerateDeterminant";
    case ErrorCode::StepSizeTooLarge: return "StepSizeTooLarge";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::InvalidRegime: return "InvalidRegime";
    case ErrorCode::NotInSpeedRange: return "NotInSpeedRange";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::NotDiagonallyDominant: return "NotDiagonallyDominant";
    case ErrorCode::BoundBreach: return "BoundBreach";
    case ErrorCode::DomainExhausted: return "DomainExhausted";
    case ErrorCode::FrontRetreat: return "FrontRetreat";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::BracketInvalid: return "BracketInvalid";
    case ErrorCode::HorizonExhausted: return "HorizonExhausted";
    case ErrorCode::NotSpreading: return "NotSpreading";
    case ErrorCode::Instability: return "Instability";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace lvfb
