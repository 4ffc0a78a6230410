#include "qif/error.hpp"

namespace qif {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidBelief: return "InvalidBelief";
    case ErrorCode::MissingSecretValues: return "MissingSecretValues";
    case ErrorCode::NoSubgradient: return "NoSubgradient";
    case ErrorCode::BoundaryForecast: return "BoundaryForecast";
    case ErrorCode::InvalidMechanism: return "InvalidMechanism";
    case ErrorCode::UnknownAction: return "UnknownAction";
    case ErrorCode::UnknownObservation: return "UnknownObservation";
    case ErrorCode::ZeroProbabilityObservation: return "ZeroProbabilityObservation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::TooManyVariables: return "TooManyVariables";
    case ErrorCode::DuplicateSecretIds: return "DuplicateSecretIds";
    case ErrorCode::NonNumericNoiseColumn: return "NonNumericNoiseColumn";
    case ErrorCode::NotDeterministic: return "NotDeterministic";
    case ErrorCode::NotNonAdaptive: return "NotNonAdaptive";
    case ErrorCode::UnsupportedMeasure: return "UnsupportedMeasure";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::TooManyStrategies: return "TooManyStrategies";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace qif
