#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qif/belief.hpp"
#include "qif/leakage.hpp"
#include "qif/mechanism.hpp"
#include "qif/planner.hpp"
#include "qif/simulator.hpp"
#include "qif/strategy.hpp"

namespace qif {

using Json = nlohmann::ordered_json;

/// Mechanism file: {secrets, observations, actions: [{name, matrix}], prior?, secret_values?}.
struct MechanismFile {
  Mechanism mechanism;
  std::optional<Belief> prior;

  Belief prior_or_uniform() const { return prior ? *prior : Belief::uniform(mechanism.num_secrets()); }
};

/// Reads the whole file; ParseError if it cannot be read or is not JSON.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Shape problems are ParseError; probability problems are left to validate().
MechanismFile mechanism_from_json(const Json& j);
Json mechanism_to_json(const Mechanism& mech, const std::optional<Belief>& prior = std::nullopt);
MechanismFile load_mechanism(const std::string& path);

/// A strategy is either a list of actions (non-adaptive) or a node
/// {"action": a, "children": {obs: node, ..., "*": node}} where "*" is the
/// continuation for every observation without its own branch.
Strategy strategy_from_json(const Json& j);
Json strategy_to_json(const Strategy& s);
Strategy load_strategy(const std::string& path);

/// A plain list of probabilities, or {"belief": [...]}.
std::vector<double> belief_from_json(const Json& j);

/// Numbers rounded to 12 significant digits; exact fractions are added
/// when `exact` is set and the value has one.
Json number_json(double x);
Json report_to_json(const LeakageReport& r, bool exact);
Json plan_to_json(const PlanResult& plan);
Json simulation_to_json(const SimEstimate& e);

/// Beliefs render as "secret:probability" lists over the support.
std::string attack_tree_dot(const Mechanism& mech, const AttackTree& tree);
std::string strategy_dot(const Strategy& s);

}  // namespace qif
