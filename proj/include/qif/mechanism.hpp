#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qif/belief.hpp"

namespace qif {

/// One stochastic matrix p_a(y|x), rows indexed by secret.
struct ActionMatrix {
  std::string name;
  std::vector<std::vector<double>> rows;
};

/// An action-based randomization mechanism: secrets, observations, actions and
/// one |secrets|×|observations| matrix per action. Immutable after
/// construction. The constructor checks shape only; use validate() for
/// stochasticity.
class Mechanism {
 public:
  Mechanism(std::vector<std::string> secrets, std::vector<std::string> observations,
            std::vector<ActionMatrix> actions,
            std::optional<std::vector<double>> secret_values = std::nullopt);

  std::size_t num_secrets() const noexcept { return secrets_.size(); }
  std::size_t num_observations() const noexcept { return observations_.size(); }
  std::size_t num_actions() const noexcept { return actions_.size(); }

  const std::vector<std::string>& secrets() const noexcept { return secrets_; }
  const std::vector<std::string>& observations() const noexcept { return observations_; }
  const std::vector<std::string>& actions() const noexcept { return actions_; }
  const std::optional<std::vector<double>>& secret_values() const noexcept { return values_; }

  /// Throw UnknownAction / UnknownObservation / InvalidArgument.
  std::size_t action_index(std::string_view label) const;
  std::size_t observation_index(std::string_view label) const;
  std::size_t secret_index(std::string_view label) const;

  std::span<const double> row(std::size_t action, std::size_t secret) const {
    return {matrices_[action].data() + secret * observations_.size(), observations_.size()};
  }
  double prob(std::size_t action, std::size_t secret, std::size_t obs) const {
    return matrices_[action][secret * observations_.size() + obs];
  }
  std::vector<std::vector<double>> matrix_rows(std::size_t action) const;

  Mechanism with_secret_values(std::optional<std::vector<double>> values) const;

 private:
  std::vector<std::string> secrets_;
  std::vector<std::string> observations_;
  std::vector<std::string> actions_;
  std::vector<std::vector<double>> matrices_;  // row-major per action
  std::optional<std::vector<double>> values_;
};

struct RowViolation {
  std::string action;
  std::string secret;
  double row_sum = 0.0;
  double min_entry = 0.0;
  std::string reason;
};

struct ValidationReport {
  std::vector<RowViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Lists every row that is not a probability distribution within `tol`.
ValidationReport validate(const Mechanism& mech, double tol = kTolerance);

/// True iff every entry is 0 or 1 within `tol`.
bool is_deterministic(const Mechanism& mech, double tol = kTolerance);

/// Labels, values and every matrix entry agree within `tol`.
bool approx_equal(const Mechanism& a, const Mechanism& b, double tol = kTolerance);

/// y ↦ Σ_x belief(x)·p_a(y|x).
std::vector<double> observation_dist(const Mechanism& mech, std::span<const double> belief,
                                     std::size_t action);
std::vector<double> observation_dist(const Mechanism& mech, const Belief& belief,
                                     std::string_view action);

/// Writes the Bayes posterior after (action, obs) into `out` and returns the
/// marginal probability of obs. `out` is left unspecified when that is zero.
double bayes_update(const Mechanism& mech, std::span<const double> belief, std::size_t action,
                    std::size_t obs, std::vector<double>& out);

/// Throws ZeroProbabilityObservation when obs cannot occur under `belief`.
Belief belief_update(const Mechanism& mech, const Belief& belief, std::size_t action,
                     std::size_t obs);
Belief belief_update(const Mechanism& mech, const Belief& belief, std::string_view action,
                     std::string_view obs);

/// Makes the played action part of each observation: observations become
/// (b, y) pairs labelled "b:y", with p_a((b,y)|x) = p_a(y|x) if a = b else 0.
Mechanism lift_actions_observable(const Mechanism& mech);

}  // namespace qif
