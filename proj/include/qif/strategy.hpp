#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qif/mechanism.hpp"

namespace qif {

/// A finite strategy: a prefix-closed map from observation sequences to
/// actions, stored as a tree whose nodes carry actions and whose arcs carry
/// observations. Besides explicit branches a node may hold an `otherwise`
/// continuation that answers every observation without an explicit branch;
/// this is how list (non-adaptive) strategies stay independent of any
/// particular observation alphabet.
///
/// Strategies are immutable values; subtrees are shared.
class Strategy {
 public:
  struct Node;
  using Branch = std::pair<std::string, Strategy>;

  /// Single-node strategy [ε ↦ action].
  explicit Strategy(std::string action);
  Strategy(std::string action, std::vector<Branch> branches,
           std::optional<Strategy> otherwise = std::nullopt);

  /// The list strategy [a1, …, an]. Throws InvalidArgument on an empty list.
  static Strategy from_list(const std::vector<std::string>& actions);

  const std::string& action() const noexcept;
  const std::vector<Branch>& branches() const noexcept;
  const std::optional<Strategy>& otherwise() const noexcept;

  /// The subtree reached by `obs`, if any.
  const Strategy* child(std::string_view obs) const;

  /// 1 + maximal depth of any domain element.
  std::size_t length() const;
  /// Number of nodes in the stored tree.
  std::size_t node_count() const;

  /// Distinct actions in breadth-first order, branches before `otherwise`.
  std::vector<std::string> range() const;

  /// The action list when the tree is a pure `otherwise` chain.
  std::optional<std::vector<std::string>> as_list() const;

  friend bool operator==(const Strategy& a, const Strategy& b);

 private:
  std::shared_ptr<const Node> node_;
};

struct Strategy::Node {
  std::string action;
  std::vector<Branch> branches;
  std::optional<Strategy> otherwise;
};

/// Restriction of the strategy to sequences of length <= n.
Strategy truncate(const Strategy& s, std::size_t n);

/// σ_y(w) = σ(y w); empty when there is no y-branch.
std::optional<Strategy> derivative(const Strategy& s, std::string_view obs);

/// True iff every depth plays one action and the tree is complete over the
/// mechanism's observations.
bool is_nonadaptive(const Strategy& s, const Mechanism& mech);

/// The action list of a non-adaptive strategy (NotNonAdaptive otherwise).
std::vector<std::string> nonadaptive_actions(const Strategy& s, const Mechanism& mech);

/// [a1,…,ah, …, a1,…,ah] (l repetitions of range(s)); length |range(s)|·l.
Strategy expand_nonadaptive(const Strategy& s);

/// Drops repeated actions of a non-adaptive strategy, keeping first
/// occurrences. Throws NotDeterministic / NotNonAdaptive.
Strategy dedupe_for_deterministic(const Strategy& s, const Mechanism& mech);

/// Every action once, in mechanism order.
Strategy all_actions_pass(const Mechanism& mech);

/// The lock-step list a1,…,ak,a1,… truncated to `length` entries.
Strategy lockstep(const Mechanism& mech, std::size_t length);

}  // namespace qif
