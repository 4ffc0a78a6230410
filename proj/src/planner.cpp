#include "qif/planner.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "qif/leakage.hpp"

namespace qif {

namespace {

constexpr double kTieMargin = 1e-12;

struct Solved {
  double value;
  std::optional<Strategy> strategy;
};

class BackwardInduction {
 public:
  BackwardInduction(const Mechanism& mech, const UncertaintyMeasure& measure)
      : mech_(mech), measure_(measure) {}

  // V(b, d) = max_a [ I_a(b) + Σ_{y: p_a(y)>0} p_a(y)·V(b^{ay}, d−1) ].
  Solved solve(std::span<const double> belief, std::size_t depth,
               std::vector<std::pair<std::string, double>>* q_values = nullptr) {
    if (depth == 0) return {0.0, std::nullopt};
    ++nodes_;
    const double here = measure_(belief);
    Solved best{-std::numeric_limits<double>::infinity(), std::nullopt};
    std::vector<double> post;
    for (std::size_t a = 0; a < mech_.num_actions(); ++a) {
      double conditional = 0.0;
      double continuation = 0.0;
      std::vector<Strategy::Branch> branches;
      for (std::size_t y = 0; y < mech_.num_observations(); ++y) {
        const double p = bayes_update(mech_, belief, a, y, post);
        if (p < kPruneThreshold) continue;
        conditional += p * measure_(post);
        if (depth > 1) {
          auto child = solve(post, depth - 1);
          continuation += p * child.value;
          branches.emplace_back(mech_.observations()[y], std::move(*child.strategy));
        }
      }
      const double q = (here - conditional) + continuation;
      if (q_values) q_values->emplace_back(mech_.actions()[a], q);
      if (q > best.value + kTieMargin) {
        best.value = q;
        best.strategy = Strategy(mech_.actions()[a], std::move(branches));
      }
    }
    return best;
  }

  std::size_t nodes() const noexcept { return nodes_; }

 private:
  const Mechanism& mech_;
  const UncertaintyMeasure& measure_;
  std::size_t nodes_ = 0;
};

void check_inputs(const Mechanism& mech, const Belief& prior, std::size_t horizon) {
  if (horizon == 0) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  if (prior.size() != mech.num_secrets()) {
    throw Error(ErrorCode::InvalidBelief, "prior size does not match the secret set");
  }
}

}  // namespace

MdpSize mdp_size_estimate(const Mechanism& mech, std::size_t horizon) {
  const double branching = static_cast<double>(mech.num_observations() * mech.num_actions());
  const double power = std::pow(branching, static_cast<double>(horizon + 1));
  return {power - 1.0, static_cast<double>(mech.num_secrets()) * power};
}

PlanResult optimal_strategy(const Mechanism& mech, const Belief& prior, const UncertaintyMeasure& measure,
                            std::size_t horizon, double budget) {
  check_inputs(mech, prior, horizon);
  const auto size = mdp_size_estimate(mech, horizon);
  if (!(size.decision_nodes <= budget)) {
    throw Error(ErrorCode::BudgetExceeded, "estimated " + std::to_string(size.decision_nodes) +
                                               " decision nodes exceeds budget " + std::to_string(budget));
  }
  BackwardInduction solver(mech, measure);
  PlanResult result{Strategy(mech.actions().front()), 0.0, horizon, 0, {}};
  auto solved = solver.solve(prior.probs(), horizon, &result.action_values);
  result.strategy = std::move(*solved.strategy);
  result.value = solved.value;
  result.nodes_expanded = solver.nodes();
  return result;
}

double complete_strategy_count(const Mechanism& mech, std::size_t horizon) {
  const double y = static_cast<double>(mech.num_observations());
  const double l = static_cast<double>(horizon);
  const double nodes = y == 1.0 ? l : (std::pow(y, l) - 1.0) / (y - 1.0);
  return std::pow(static_cast<double>(mech.num_actions()), nodes);
}

PlanResult exhaustive_oracle(const Mechanism& mech, const Belief& prior, const UncertaintyMeasure& measure,
                             std::size_t horizon, double max_strategies) {
  check_inputs(mech, prior, horizon);
  const double count = complete_strategy_count(mech, horizon);
  if (!(count <= max_strategies)) {
    throw Error(ErrorCode::TooManyStrategies,
                std::to_string(count) + " complete strategies exceed the limit " + std::to_string(max_strategies));
  }
  const std::size_t ny = mech.num_observations();
  const std::size_t na = mech.num_actions();
  std::size_t internal = 0;  // nodes at depth < horizon in the complete ny-ary tree
  for (std::size_t d = 0, width = 1; d < horizon; ++d, width *= ny) internal += width;

  // Node k's children are k·ny + 1 + y (breadth-first numbering).
  std::vector<std::size_t> assignment(internal, 0);
  auto build = [&](auto&& self, std::size_t k, std::size_t depth) -> Strategy {
    const auto& action = mech.actions()[assignment[k]];
    if (depth + 1 == horizon) return Strategy(action);
    std::vector<Strategy::Branch> branches;
    for (std::size_t y = 0; y < ny; ++y) {
      branches.emplace_back(mech.observations()[y], self(self, k * ny + 1 + y, depth + 1));
    }
    return Strategy(action, std::move(branches));
  };

  PlanResult best{build(build, 0, 0), -std::numeric_limits<double>::infinity(), horizon, 0, {}};
  for (;;) {
    auto candidate = build(build, 0, 0);
    const double value = leakage(mech, prior, candidate, measure).leakage;
    ++best.nodes_expanded;
    if (value > best.value + kTieMargin) {
      best.value = value;
      best.strategy = std::move(candidate);
    }
    // Odometer with the last node fastest, so candidates arrive in
    // lexicographic order.
    std::size_t pos = internal;
    while (pos > 0 && ++assignment[pos - 1] == na) assignment[--pos] = 0;
    if (pos == 0) break;
  }
  return best;
}

}  // namespace qif
