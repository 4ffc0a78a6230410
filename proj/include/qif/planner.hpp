#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qif/belief.hpp"
#include "qif/measures.hpp"
#include "qif/mechanism.hpp"
#include "qif/strategy.hpp"

namespace qif {

inline constexpr double kDefaultPlanBudget = 1e7;
inline constexpr double kDefaultOracleBudget = 1e5;

struct PlanResult {
  Strategy strategy;
  double value = 0.0;
  std::size_t horizon = 0;
  std::size_t nodes_expanded = 0;
  /// Q-value of each action at the root: I_a(p) plus the optimal continuation.
  std::vector<std::pair<std::string, double>> action_values;
};

struct MdpSize {
  double decision_nodes;  ///< (|Y|·|Act|)^{l+1} − 1
  double work;            ///< |X|·(|Y|·|Act|)^{l+1}
};

MdpSize mdp_size_estimate(const Mechanism& mech, std::size_t horizon);

/// Backward induction on the belief MDP. Branches exist only for
/// observations of positive probability; ties go to the smallest action index.
PlanResult optimal_strategy(const Mechanism& mech, const Belief& prior, const UncertaintyMeasure& measure,
                            std::size_t horizon, double budget = kDefaultPlanBudget);

/// Number of complete strategies of the given length, |Act|^{(|Y|^l − 1)/(|Y| − 1)}.
double complete_strategy_count(const Mechanism& mech, std::size_t horizon);

/// Brute force over complete strategies. Ties keep the lexicographically
/// smallest action assignment in breadth-first node order.
PlanResult exhaustive_oracle(const Mechanism& mech, const Belief& prior, const UncertaintyMeasure& measure,
                             std::size_t horizon, double max_strategies = kDefaultOracleBudget);

}  // namespace qif
