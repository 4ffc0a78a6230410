#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qif/belief.hpp"

namespace qif {

enum class MeasureKind { Shannon, Error, Guessing, Variance, Custom };

std::string_view to_string(MeasureKind kind);

/// A concave, continuous function on beliefs quantifying the adversary's
/// uncertainty. All logarithms are base 2 with 0·log 0 = 0.
class UncertaintyMeasure {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using SubgradientFn = std::function<std::vector<double>(std::span<const double>)>;

  static UncertaintyMeasure shannon();
  static UncertaintyMeasure error();
  /// Σ_i i·p_(i) over the descending sort, ties by smallest secret index.
  static UncertaintyMeasure guessing();
  /// Variance of the secret's numeric encoding. Without values every
  /// evaluation throws MissingSecretValues.
  static UncertaintyMeasure variance(std::optional<std::vector<double>> secret_values);
  static UncertaintyMeasure custom(std::string name, ValueFn value, SubgradientFn subgradient = {});

  /// Resolves "shannon", "error", "guessing" or "variance". Throws
  /// UnsupportedMeasure for anything else.
  static UncertaintyMeasure from_name(std::string_view name,
                                      std::optional<std::vector<double>> secret_values = {});

  MeasureKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const std::optional<std::vector<double>>& secret_values() const noexcept { return values_; }

  /// Unchecked evaluation on a raw probability vector.
  double operator()(std::span<const double> probs) const;

  bool has_subgradient() const noexcept { return static_cast<bool>(subgradient_); }
  /// A subgradient (supporting-hyperplane slope) at an interior point.
  std::vector<double> subgradient(std::span<const double> probs) const;

 private:
  UncertaintyMeasure(MeasureKind kind, std::string name, ValueFn value, SubgradientFn subgradient,
                     std::optional<std::vector<double>> values);

  MeasureKind kind_;
  std::string name_;
  ValueFn value_;
  SubgradientFn subgradient_;
  std::optional<std::vector<double>> values_;
};

/// Validated evaluation: U(belief). Throws InvalidBelief on a size mismatch
/// with the measure's secret values.
double uncertainty_eval(const UncertaintyMeasure& measure, const Belief& belief);

double shannon_entropy(std::span<const double> probs);
double error_entropy(std::span<const double> probs);
double guessing_entropy(std::span<const double> probs);
double variance_of(std::span<const double> probs, std::span<const double> values);

/// Secret indices sorted by descending probability, ties by smallest index.
std::vector<std::size_t> descending_order(std::span<const double> probs);
/// Smallest index attaining the maximum probability.
std::size_t argmax_index(std::span<const double> probs);

struct ConcavityReport {
  double worst_violation = 0.0;  ///< max of λU(p)+(1−λ)U(q) − U(λp+(1−λ)q)
  double lambda = 0.0;
  std::vector<double> p;
  std::vector<double> q;
  std::size_t samples = 0;
};

/// Seeded random search for concavity violations on `dimension` secrets.
/// Probes mix interior points with simplex vertices and faces.
ConcavityReport concavity_probe(const UncertaintyMeasure& measure, std::size_t dimension,
                                std::size_t samples, std::uint64_t seed);

}  // namespace qif
