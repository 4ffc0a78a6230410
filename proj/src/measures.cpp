#include "qif/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qif/random.hpp"

namespace qif {

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Shannon: return "shannon";
    case MeasureKind::Error: return "error";
    case MeasureKind::Guessing: return "guessing";
    case MeasureKind::Variance: return "variance";
    case MeasureKind::Custom: return "custom";
  }
  return "custom";
}

double shannon_entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

std::size_t argmax_index(std::span<const double> probs) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < probs.size(); ++i) {
    if (probs[i] > probs[best]) best = i;
  }
  return best;
}

double error_entropy(std::span<const double> probs) { return 1.0 - probs[argmax_index(probs)]; }

std::vector<std::size_t> descending_order(std::span<const double> probs) {
  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
  return order;
}

double guessing_entropy(std::span<const double> probs) {
  const auto order = descending_order(probs);
  double g = 0.0;
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    g += static_cast<double>(rank + 1) * probs[order[rank]];
  }
  return g;
}

double variance_of(std::span<const double> probs, std::span<const double> values) {
  double mean = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) mean += probs[i] * values[i];
  double var = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double d = values[i] - mean;
    var += probs[i] * d * d;
  }
  return var;
}

namespace {

std::vector<double> shannon_gradient(std::span<const double> q) {
  std::vector<double> c(q.size());
  const double inv_ln2 = 1.0 / std::log(2.0);
  for (std::size_t i = 0; i < q.size(); ++i) c[i] = -(std::log2(q[i]) + inv_ln2);
  return c;
}

// (−δ_{1 j_q}, …, −δ_{n j_q}); a subgradient even where the max is not unique.
std::vector<double> error_subgradient(std::span<const double> q) {
  std::vector<double> c(q.size(), 0.0);
  c[argmax_index(q)] = -1.0;
  return c;
}

// G is the minimum of the linear maps p ↦ Σ rank_π(i)·p_i over permutations π;
// the active one's coefficients are a subgradient.
std::vector<double> guessing_subgradient(std::span<const double> q) {
  const auto order = descending_order(q);
  std::vector<double> c(q.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    c[order[rank]] = static_cast<double>(rank + 1);
  }
  return c;
}

}  // namespace

UncertaintyMeasure::UncertaintyMeasure(MeasureKind kind, std::string name, ValueFn value,
                                       SubgradientFn subgradient,
                                       std::optional<std::vector<double>> values)
    : kind_(kind),
      name_(std::move(name)),
      value_(std::move(value)),
      subgradient_(std::move(subgradient)),
      values_(std::move(values)) {}

UncertaintyMeasure UncertaintyMeasure::shannon() {
  return {MeasureKind::Shannon, "shannon", shannon_entropy, shannon_gradient, std::nullopt};
}

UncertaintyMeasure UncertaintyMeasure::error() {
  return {MeasureKind::Error, "error", error_entropy, error_subgradient, std::nullopt};
}

UncertaintyMeasure UncertaintyMeasure::guessing() {
  return {MeasureKind::Guessing, "guessing", guessing_entropy, guessing_subgradient, std::nullopt};
}

UncertaintyMeasure UncertaintyMeasure::variance(std::optional<std::vector<double>> secret_values) {
  if (!secret_values) {
    auto missing = [](std::span<const double>) -> double {
      throw Error(ErrorCode::MissingSecretValues, "variance needs numeric secret values");
    };
    auto missing_grad = [](std::span<const double>) -> std::vector<double> {
      throw Error(ErrorCode::MissingSecretValues, "variance needs numeric secret values");
    };
    return {MeasureKind::Variance, "variance", missing, missing_grad, std::nullopt};
  }
  auto values = *secret_values;
  auto value = [values](std::span<const double> p) { return variance_of(p, values); };
  // ∂/∂p_i [Σ p x² − (Σ p x)²] = x_i² − 2 μ_q x_i
  auto gradient = [values](std::span<const double> q) {
    double mean = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) mean += q[i] * values[i];
    std::vector<double> c(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) c[i] = values[i] * values[i] - 2.0 * mean * values[i];
    return c;
  };
  return {MeasureKind::Variance, "variance", value, gradient, std::move(secret_values)};
}

UncertaintyMeasure UncertaintyMeasure::custom(std::string name, ValueFn value,
                                              SubgradientFn subgradient) {
  return {MeasureKind::Custom, std::move(name), std::move(value), std::move(subgradient),
          std::nullopt};
}

UncertaintyMeasure UncertaintyMeasure::from_name(std::string_view name,
                                                 std::optional<std::vector<double>> secret_values) {
  if (name == "shannon") return shannon();
  if (name == "error") return error();
  if (name == "guessing") return guessing();
  if (name == "variance") return variance(std::move(secret_values));
  throw Error(ErrorCode::UnsupportedMeasure, "unknown measure '" + std::string(name) + "'");
}

double UncertaintyMeasure::operator()(std::span<const double> probs) const {
  return value_(probs);
}

std::vector<double> UncertaintyMeasure::subgradient(std::span<const double> probs) const {
  if (!subgradient_) {
    throw Error(ErrorCode::NoSubgradient, "measure '" + name_ + "' has no subgradient");
  }
  return subgradient_(probs);
}

double uncertainty_eval(const UncertaintyMeasure& measure, const Belief& belief) {
  if (measure.kind() == MeasureKind::Variance) {
    const auto& values = measure.secret_values();
    if (!values) throw Error(ErrorCode::MissingSecretValues, "variance needs numeric secret values");
    if (values->size() != belief.size()) {
      throw Error(ErrorCode::InvalidBelief, "belief size does not match secret values");
    }
  }
  return measure(belief.probs());
}

namespace {

std::vector<double> probe_point(Rng& rng, std::size_t n) {
  const double kind = uniform01(rng);
  if (kind < 0.25) {
    std::vector<double> p(n, 0.0);
    p[uniform_index(rng, n)] = 1.0;
    return p;
  }
  auto p = random_simplex_point(rng, n);
  if (kind < 0.5 && n > 1) {
    // Zero out a random coordinate to land on a face of the simplex.
    const auto drop = uniform_index(rng, n);
    const double removed = p[drop];
    p[drop] = 0.0;
    if (removed < 1.0) {
      for (auto& v : p) v /= (1.0 - removed);
    } else {
      p[(drop + 1) % n] = 1.0;
    }
  }
  return p;
}

}  // namespace

ConcavityReport concavity_probe(const UncertaintyMeasure& measure, std::size_t dimension,
                                std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  if (dimension == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
  Rng rng(seed);
  ConcavityReport report;
  report.samples = samples;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  std::vector<double> mix(dimension);
  for (std::size_t s = 0; s < samples; ++s) {
    auto p = probe_point(rng, dimension);
    auto q = probe_point(rng, dimension);
    // Every fourth probe uses the midpoint, where piecewise-linear measures
    // are most likely to show a kink.
    const double lambda = (s % 4 == 0) ? 0.5 : uniform01(rng);
    for (std::size_t i = 0; i < dimension; ++i) mix[i] = lambda * p[i] + (1.0 - lambda) * q[i];
    const double violation = lambda * measure(p) + (1.0 - lambda) * measure(q) - measure(mix);
    if (violation > report.worst_violation) {
      report.worst_violation = violation;
      report.lambda = lambda;
      report.p = std::move(p);
      report.q = std::move(q);
    }
  }
  return report;
}

}  // namespace qif
