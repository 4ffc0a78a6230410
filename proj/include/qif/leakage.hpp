#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qif/belief.hpp"
#include "qif/measures.hpp"
#include "qif/mechanism.hpp"
#include "qif/partition.hpp"
#include "qif/strategy.hpp"

namespace qif {

inline constexpr std::size_t kNoIndex = std::numeric_limits<std::size_t>::max();

/// Default cap on attack-tree nodes visited by one computation.
inline constexpr std::size_t kDefaultNodeBudget = 10'000'000;

/// One node of an attack tree, identified by its history. `action` is the
/// action played at the node (kNoIndex at leaves); `observation` and
/// `arc_probability` describe the incoming arc (kNoIndex / 1 at the root).
struct AttackNode {
  std::size_t parent = kNoIndex;
  std::size_t observation = kNoIndex;
  std::size_t action = kNoIndex;
  double arc_probability = 1.0;
  double path_probability = 1.0;  ///< π_h, product of arc probabilities
  std::vector<double> belief;     ///< p^h
  std::vector<std::size_t> children;

  bool is_leaf() const noexcept { return action == kNoIndex; }
};

/// Nodes in depth-first order (children by observation index), root first.
/// Zero-probability branches are pruned together with their descendants.
struct AttackTree {
  std::vector<AttackNode> nodes;

  std::vector<std::size_t> leaves() const;
};

AttackTree build_attack_tree(const Mechanism& mech, const Belief& prior, const Strategy& s,
                             std::size_t node_budget = kDefaultNodeBudget);

struct LeakageReport {
  std::string measure;
  double prior_uncertainty = 0.0;        ///< U(X)
  double conditional_uncertainty = 0.0;  ///< U_σ(X|Y)
  double leakage = 0.0;                  ///< I_σ(X;Y)
  std::size_t strategy_length = 0;
  std::size_t trace_count = 0;  ///< leaves with positive probability
};

/// Exact leakage of a finite strategy: U(X) − Σ_leaf π_h·U(p^h).
LeakageReport leakage(const Mechanism& mech, const Belief& prior, const Strategy& s,
                      const UncertaintyMeasure& measure, std::size_t node_budget = kDefaultNodeBudget);

/// Single-action leakage I_a(p) on a raw belief.
double action_leakage(const Mechanism& mech, std::span<const double> belief, std::size_t action,
                      const UncertaintyMeasure& measure);

/// U(X|[X]) = Σ_c p(c)·U(p(·|c)).
double class_conditional_uncertainty(const Partition& classes, std::span<const double> prior,
                                     const UncertaintyMeasure& measure);

/// I(X;[X]), the supremum of leakage over all strategies.
double max_leakage(const Mechanism& mech, const Belief& prior, const UncertaintyMeasure& measure);

/// Closed forms in K = number of indistinguishability classes: log2 K for
/// Shannon, 1 − 1/K for error. Throws UnsupportedMeasure otherwise.
double capacity(const Mechanism& mech, MeasureKind kind);

struct CapacitySearchResult {
  Belief prior;
  double value;
};

/// Hill-climbs I(X;[X]) over priors supported on one representative (the
/// smallest member) per class. Deterministic for a given seed.
CapacitySearchResult capacity_search(const Mechanism& mech, const UncertaintyMeasure& measure,
                                     std::size_t restarts = 32, std::uint64_t seed = 0);

/// I_σ(p) = I_a(p) + Σ_y p_a(y)·I_{σ_y}(p^{ay}).
struct ChainDecomposition {
  struct Term {
    std::string observation;
    double probability = 0.0;   ///< p_a(y)
    double continuation = 0.0;  ///< I_{σ_y}(p^{ay}), 0 when σ_y is empty
  };
  std::string head_action;
  double head = 0.0;  ///< I_a(p)
  std::vector<Term> terms;
  double total = 0.0;
};

ChainDecomposition chain_decompose(const Mechanism& mech, const Belief& prior, const Strategy& s,
                                   const UncertaintyMeasure& measure);

}  // namespace qif
