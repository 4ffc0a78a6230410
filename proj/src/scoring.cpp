#include "qif/scoring.hpp"

namespace qif {

namespace {

void require_interior(const Belief& forecast) {
  if (!forecast.is_interior()) {
    throw Error(ErrorCode::BoundaryForecast, "forecast must give every secret positive probability");
  }
}

}  // namespace

ScoringRule::ScoringRule(UncertaintyMeasure base) : base_(std::move(base)) {
  if (!base_.has_subgradient()) {
    throw Error(ErrorCode::NoSubgradient, "measure '" + base_.name() + "' has no subgradient");
  }
}

std::vector<double> ScoringRule::subgradient(const Belief& forecast) const {
  require_interior(forecast);
  return base_.subgradient(forecast.probs());
}

std::vector<double> ScoringRule::scores(const Belief& forecast) const {
  require_interior(forecast);
  const auto c = base_.subgradient(forecast.probs());
  if (c.size() != forecast.size()) {
    throw Error(ErrorCode::InvalidBelief, "subgradient size does not match forecast");
  }
  double inner = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) inner += c[i] * forecast[i];
  const double offset = uncertainty_eval(base_, forecast) - inner;
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = offset + c[i];
  return out;
}

double ScoringRule::score(std::size_t secret, const Belief& forecast) const {
  if (secret >= forecast.size()) throw Error(ErrorCode::InvalidArgument, "secret index out of range");
  return scores(forecast)[secret];
}

ScoringRule psr_from_measure(const UncertaintyMeasure& measure) { return ScoringRule(measure); }

double expected_score(const ScoringRule& rule, const Belief& truth, const Belief& forecast) {
  if (truth.size() != forecast.size()) {
    throw Error(ErrorCode::InvalidBelief, "truth and forecast sizes differ");
  }
  const auto s = rule.scores(forecast);
  double total = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (truth[i] > 0.0) total += truth[i] * s[i];
  }
  return total;
}

}  // namespace qif
