#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qif {

/// Every failure the library reports carries one of these codes. The CLI maps
/// them onto its exit-status contract (domain = 1, usage/parse = 2, budget = 3).
enum class ErrorCode {
  InvalidBelief,
  MissingSecretValues,
  NoSubgradient,
  BoundaryForecast,
  InvalidMechanism,
  UnknownAction,
  UnknownObservation,
  ZeroProbabilityObservation,
  ParseError,
  TooManyVariables,
  DuplicateSecretIds,
  NonNumericNoiseColumn,
  NotDeterministic,
  NotNonAdaptive,
  UnsupportedMeasure,
  BudgetExceeded,
  TooManyStrategies,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Default tolerance for probability and value equalities.
inline constexpr double kTolerance = 1e-9;

/// Arcs with probability below this are pruned from attack trees and plans.
inline constexpr double kPruneThreshold = 1e-12;

}  // namespace qif
