#include "qif/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qif {

namespace {

void require_unique(const std::vector<std::string>& labels, const char* what) {
  if (labels.empty()) throw Error(ErrorCode::InvalidMechanism, std::string(what) + " set is empty");
  std::set<std::string_view> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw Error(ErrorCode::InvalidMechanism, std::string("duplicate ") + what + " label '" + l + "'");
    }
  }
}

std::size_t find_label(const std::vector<std::string>& labels, std::string_view label) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  return it == labels.end() ? labels.size() : static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

Mechanism::Mechanism(std::vector<std::string> secrets, std::vector<std::string> observations,
                     std::vector<ActionMatrix> actions, std::optional<std::vector<double>> secret_values)
    : secrets_(std::move(secrets)), observations_(std::move(observations)), values_(std::move(secret_values)) {
  require_unique(secrets_, "secret");
  require_unique(observations_, "observation");
  if (actions.empty()) throw Error(ErrorCode::InvalidMechanism, "action set is empty");
  actions_.reserve(actions.size());
  matrices_.reserve(actions.size());
  for (auto& action : actions) {
    if (action.rows.size() != secrets_.size()) {
      throw Error(ErrorCode::InvalidMechanism,
                  "matrix of action '" + action.name + "' must have one row per secret");
    }
    std::vector<double> flat;
    flat.reserve(secrets_.size() * observations_.size());
    for (const auto& r : action.rows) {
      if (r.size() != observations_.size()) {
        throw Error(ErrorCode::InvalidMechanism,
                    "matrix of action '" + action.name + "' must have one column per observation");
      }
      flat.insert(flat.end(), r.begin(), r.end());
    }
    actions_.push_back(std::move(action.name));
    matrices_.push_back(std::move(flat));
  }
  require_unique(actions_, "action");
  if (values_ && values_->size() != secrets_.size()) {
    throw Error(ErrorCode::InvalidMechanism, "secret_values must have one entry per secret");
  }
}

std::size_t Mechanism::action_index(std::string_view label) const {
  const auto i = find_label(actions_, label);
  if (i == actions_.size()) throw Error(ErrorCode::UnknownAction, "no action '" + std::string(label) + "'");
  return i;
}

std::size_t Mechanism::observation_index(std::string_view label) const {
  const auto i = find_label(observations_, label);
  if (i == observations_.size()) {
    throw Error(ErrorCode::UnknownObservation, "no observation '" + std::string(label) + "'");
  }
  return i;
}

std::size_t Mechanism::secret_index(std::string_view label) const {
  const auto i = find_label(secrets_, label);
  if (i == secrets_.size()) throw Error(ErrorCode::InvalidArgument, "no secret '" + std::string(label) + "'");
  return i;
}

std::vector<std::vector<double>> Mechanism::matrix_rows(std::size_t action) const {
  std::vector<std::vector<double>> rows;
  rows.reserve(num_secrets());
  for (std::size_t x = 0; x < num_secrets(); ++x) {
    const auto r = row(action, x);
    rows.emplace_back(r.begin(), r.end());
  }
  return rows;
}

Mechanism Mechanism::with_secret_values(std::optional<std::vector<double>> values) const {
  Mechanism copy = *this;
  if (values && values->size() != secrets_.size()) {
    throw Error(ErrorCode::InvalidMechanism, "secret_values must have one entry per secret");
  }
  copy.values_ = std::move(values);
  return copy;
}

ValidationReport validate(const Mechanism& mech, double tol) {
  ValidationReport report;
  for (std::size_t a = 0; a < mech.num_actions(); ++a) {
    for (std::size_t x = 0; x < mech.num_secrets(); ++x) {
      const auto r = mech.row(a, x);
      double sum = 0.0;
      double min_entry = r[0];
      bool finite = true;
      for (double v : r) {
        finite = finite && std::isfinite(v);
        sum += v;
        min_entry = std::min(min_entry, v);
      }
      std::string reason;
      if (!finite) {
        reason = "non-finite entry";
      } else if (min_entry < -tol) {
        reason = "negative entry";
      } else if (std::abs(sum - 1.0) > tol) {
        reason = "row does not sum to 1";
      }
      if (!reason.empty()) {
        report.violations.push_back({mech.actions()[a], mech.secrets()[x], sum, min_entry, reason});
      }
    }
  }
  return report;
}

bool is_deterministic(const Mechanism& mech, double tol) {
  for (std::size_t a = 0; a < mech.num_actions(); ++a) {
    for (std::size_t x = 0; x < mech.num_secrets(); ++x) {
      for (double v : mech.row(a, x)) {
        if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
      }
    }
  }
  return true;
}

bool approx_equal(const Mechanism& a, const Mechanism& b, double tol) {
  if (a.secrets() != b.secrets() || a.observations() != b.observations() || a.actions() != b.actions()) {
    return false;
  }
  if (a.secret_values().has_value() != b.secret_values().has_value()) return false;
  if (a.secret_values()) {
    for (std::size_t i = 0; i < a.num_secrets(); ++i) {
      if (std::abs((*a.secret_values())[i] - (*b.secret_values())[i]) > tol) return false;
    }
  }
  for (std::size_t act = 0; act < a.num_actions(); ++act) {
    for (std::size_t x = 0; x < a.num_secrets(); ++x) {
      const auto ra = a.row(act, x);
      const auto rb = b.row(act, x);
      for (std::size_t y = 0; y < ra.size(); ++y) {
        if (std::abs(ra[y] - rb[y]) > tol) return false;
      }
    }
  }
  return true;
}

std::vector<double> observation_dist(const Mechanism& mech, std::span<const double> belief,
                                     std::size_t action) {
  std::vector<double> dist(mech.num_observations(), 0.0);
  for (std::size_t x = 0; x < mech.num_secrets(); ++x) {
    if (belief[x] == 0.0) continue;
    const auto r = mech.row(action, x);
    for (std::size_t y = 0; y < dist.size(); ++y) dist[y] += belief[x] * r[y];
  }
  return dist;
}

std::vector<double> observation_dist(const Mechanism& mech, const Belief& belief,
                                     std::string_view action) {
  if (belief.size() != mech.num_secrets()) {
    throw Error(ErrorCode::InvalidBelief, "belief size does not match the secret set");
  }
  return observation_dist(mech, belief.probs(), mech.action_index(action));
}

double bayes_update(const Mechanism& mech, std::span<const double> belief, std::size_t action,
                    std::size_t obs, std::vector<double>& out) {
  out.resize(mech.num_secrets());
  double marginal = 0.0;
  for (std::size_t x = 0; x < mech.num_secrets(); ++x) {
    out[x] = belief[x] * mech.prob(action, x, obs);
    marginal += out[x];
  }
  if (marginal > 0.0) {
    for (auto& v : out) v /= marginal;
  }
  return marginal;
}

Belief belief_update(const Mechanism& mech, const Belief& belief, std::size_t action, std::size_t obs) {
  if (belief.size() != mech.num_secrets()) {
    throw Error(ErrorCode::InvalidBelief, "belief size does not match the secret set");
  }
  if (action >= mech.num_actions()) throw Error(ErrorCode::UnknownAction, "action index out of range");
  if (obs >= mech.num_observations()) {
    throw Error(ErrorCode::UnknownObservation, "observation index out of range");
  }
  std::vector<double> post;
  const double marginal = bayes_update(mech, belief.probs(), action, obs, post);
  if (!(marginal > 0.0)) {
    throw Error(ErrorCode::ZeroProbabilityObservation,
                "observation '" + mech.observations()[obs] + "' has probability 0 under action '" +
                    mech.actions()[action] + "'");
  }
  return Belief(std::move(post));
}

Belief belief_update(const Mechanism& mech, const Belief& belief, std::string_view action,
                     std::string_view obs) {
  return belief_update(mech, belief, mech.action_index(action), mech.observation_index(obs));
}

Mechanism lift_actions_observable(const Mechanism& mech) {
  const std::size_t ny = mech.num_observations();
  std::vector<std::string> observations;
  observations.reserve(mech.num_actions() * ny);
  for (const auto& a : mech.actions()) {
    for (const auto& y : mech.observations()) observations.push_back(a + ":" + y);
  }
  std::vector<ActionMatrix> actions;
  for (std::size_t a = 0; a < mech.num_actions(); ++a) {
    ActionMatrix m{mech.actions()[a], {}};
    for (std::size_t x = 0; x < mech.num_secrets(); ++x) {
      std::vector<double> r(observations.size(), 0.0);
      const auto src = mech.row(a, x);
      std::copy(src.begin(), src.end(), r.begin() + static_cast<std::ptrdiff_t>(a * ny));
      m.rows.push_back(std::move(r));
    }
    actions.push_back(std::move(m));
  }
  return Mechanism(mech.secrets(), std::move(observations), std::move(actions), mech.secret_values());
}

}  // namespace qif
