#pragma once

#include <cstddef>
#include <vector>

#include "qif/belief.hpp"
#include "qif/measures.hpp"

namespace qif {

/// Proper scoring rule built from a concave measure through its supporting
/// hyperplanes: S(x_i, q) = U(q) + c_i − ⟨c_q, q⟩, with c_q a subgradient of U
/// at q. Scores are losses; honest forecasts minimize the expected score.
class ScoringRule {
 public:
  explicit ScoringRule(UncertaintyMeasure base);

  const UncertaintyMeasure& base_measure() const noexcept { return base_; }

  /// Requires an interior forecast (BoundaryForecast otherwise).
  std::vector<double> subgradient(const Belief& forecast) const;
  double score(std::size_t secret, const Belief& forecast) const;
  /// S(x_i, q) for every secret i.
  std::vector<double> scores(const Belief& forecast) const;

 private:
  UncertaintyMeasure base_;
};

/// Throws NoSubgradient when the measure has no subgradient function.
ScoringRule psr_from_measure(const UncertaintyMeasure& measure);

/// S(truth, forecast) = Σ_x truth(x)·S(x, forecast).
double expected_score(const ScoringRule& rule, const Belief& truth, const Belief& forecast);

}  // namespace qif
