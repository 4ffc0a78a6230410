#include "qif/io.hpp"

#include <fstream>
#include <sstream>

#include "qif/format.hpp"

namespace qif {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::vector<std::string> labels(const Json& j, const char* key) {
  const auto& arr = field(j, key);
  if (!arr.is_array()) parse_error(std::string("'") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& v : arr) {
    if (v.is_string()) {
      out.push_back(v.get<std::string>());
    } else if (v.is_number_integer()) {
      out.push_back(std::to_string(v.get<long long>()));
    } else {
      parse_error(std::string("'") + key + "' entries must be strings");
    }
  }
  return out;
}

std::vector<double> numbers(const Json& arr, const std::string& what) {
  if (!arr.is_array()) parse_error(what + " must be a list of numbers");
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) parse_error(what + " must be a list of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string escape_dot(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string belief_label(const Mechanism& mech, const std::vector<double>& belief) {
  std::string out;
  for (std::size_t x = 0; x < belief.size(); ++x) {
    if (belief[x] < kPruneThreshold) continue;
    if (!out.empty()) out += ", ";
    out += mech.secrets()[x] + ":" + format_exact(belief[x]);
  }
  return "{" + out + "}";
}

void strategy_nodes(const Strategy& s, std::size_t& next, std::ostringstream& out) {
  const std::size_t self = next++;
  out << "  n" << self << " [label=\"" << escape_dot(s.action()) << "\"];\n";
  auto edge = [&](const std::string& label, const Strategy& child) {
    const std::size_t id = next;
    strategy_nodes(child, next, out);
    out << "  n" << self << " -> n" << id << " [label=\"" << escape_dot(label) << "\"];\n";
  };
  for (const auto& [obs, child] : s.branches()) edge(obs, child);
  if (s.otherwise()) edge("*", *s.otherwise());
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_error("'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

MechanismFile mechanism_from_json(const Json& j) {
  auto secrets = labels(j, "secrets");
  auto observations = labels(j, "observations");
  const auto& acts = field(j, "actions");
  if (!acts.is_array()) parse_error("'actions' must be a list");
  std::vector<ActionMatrix> actions;
  for (const auto& a : acts) {
    const auto& name = field(a, "name");
    if (!name.is_string()) parse_error("action name must be a string");
    const auto& matrix = field(a, "matrix");
    if (!matrix.is_array()) parse_error("action matrix must be a list of rows");
    ActionMatrix m{name.get<std::string>(), {}};
    for (const auto& row : matrix) m.rows.push_back(numbers(row, "matrix row"));
    actions.push_back(std::move(m));
  }
  std::optional<std::vector<double>> values;
  if (j.contains("secret_values") && !j.at("secret_values").is_null()) {
    values = numbers(j.at("secret_values"), "'secret_values'");
  }
  MechanismFile file{Mechanism(std::move(secrets), std::move(observations), std::move(actions), std::move(values)),
                     std::nullopt};
  if (j.contains("prior") && !j.at("prior").is_null()) {
    auto prior = numbers(j.at("prior"), "'prior'");
    if (prior.size() != file.mechanism.num_secrets()) {
      throw Error(ErrorCode::InvalidBelief, "prior length does not match the secret set");
    }
    file.prior = Belief(std::move(prior));
  }
  return file;
}

Json mechanism_to_json(const Mechanism& mech, const std::optional<Belief>& prior) {
  Json j;
  j["secrets"] = mech.secrets();
  j["observations"] = mech.observations();
  j["actions"] = Json::array();
  for (std::size_t a = 0; a < mech.num_actions(); ++a) {
    j["actions"].push_back({{"name", mech.actions()[a]}, {"matrix", mech.matrix_rows(a)}});
  }
  if (prior) j["prior"] = prior->vector();
  if (mech.secret_values()) j["secret_values"] = *mech.secret_values();
  return j;
}

MechanismFile load_mechanism(const std::string& path) { return mechanism_from_json(read_json_file(path)); }

Strategy strategy_from_json(const Json& j) {
  if (j.is_array()) {
    std::vector<std::string> actions;
    for (const auto& v : j) {
      if (!v.is_string()) parse_error("strategy list entries must be action names");
      actions.push_back(v.get<std::string>());
    }
    if (actions.empty()) parse_error("strategy list is empty");
    return Strategy::from_list(actions);
  }
  const auto& action = field(j, "action");
  if (!action.is_string()) parse_error("strategy action must be a string");
  std::vector<Strategy::Branch> branches;
  std::optional<Strategy> otherwise;
  if (j.contains("children")) {
    const auto& children = j.at("children");
    if (!children.is_object()) parse_error("strategy children must be an object");
    for (const auto& [obs, child] : children.items()) {
      if (obs == "*") {
        otherwise = strategy_from_json(child);
      } else {
        branches.emplace_back(obs, strategy_from_json(child));
      }
    }
  }
  return Strategy(action.get<std::string>(), std::move(branches), std::move(otherwise));
}

Json strategy_to_json(const Strategy& s) {
  if (auto list = s.as_list(); list && list->size() > 1) return *list;
  Json j;
  j["action"] = s.action();
  if (!s.branches().empty() || s.otherwise()) {
    Json children = Json::object();
    for (const auto& [obs, child] : s.branches()) children[obs] = strategy_to_json(child);
    if (s.otherwise()) children["*"] = strategy_to_json(*s.otherwise());
    j["children"] = std::move(children);
  }
  return j;
}

Strategy load_strategy(const std::string& path) { return strategy_from_json(read_json_file(path)); }

std::vector<double> belief_from_json(const Json& j) {
  if (j.is_object()) return numbers(field(j, "belief"), "'belief'");
  return numbers(j, "belief");
}

Json number_json(double x) { return round12(x); }

Json report_to_json(const LeakageReport& r, bool exact) {
  Json j;
  j["measure"] = r.measure;
  j["prior_uncertainty"] = number_json(r.prior_uncertainty);
  j["conditional_uncertainty"] = number_json(r.conditional_uncertainty);
  j["leakage"] = number_json(r.leakage);
  j["strategy_length"] = r.strategy_length;
  j["traces"] = r.trace_count;
  if (exact) {
    Json fractions = Json::object();
    auto add = [&](const char* key, double v) {
      if (auto f = as_fraction(v)) fractions[key] = format_exact(v);
    };
    add("prior_uncertainty", r.prior_uncertainty);
    add("conditional_uncertainty", r.conditional_uncertainty);
    add("leakage", r.leakage);
    if (!fractions.empty()) j["exact"] = std::move(fractions);
  }
  return j;
}

Json plan_to_json(const PlanResult& plan) {
  Json j;
  j["value"] = number_json(plan.value);
  j["horizon"] = plan.horizon;
  j["root_action"] = plan.strategy.action();
  j["nodes_expanded"] = plan.nodes_expanded;
  Json values = Json::object();
  for (const auto& [action, q] : plan.action_values) values[action] = number_json(q);
  j["action_values"] = std::move(values);
  j["strategy"] = strategy_to_json(plan.strategy);
  return j;
}

Json simulation_to_json(const SimEstimate& e) {
  Json j;
  j["estimate"] = number_json(e.estimate);
  j["std_error"] = number_json(e.std_error);
  j["trials"] = e.trials;
  j["seed"] = e.seed;
  return j;
}

std::string attack_tree_dot(const Mechanism& mech, const AttackTree& tree) {
  std::ostringstream out;
  out << "digraph attack_tree {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    std::string label = escape_dot(belief_label(mech, node.belief));
    if (!node.is_leaf()) label = escape_dot(mech.actions()[node.action]) + "\\n" + label;
    out << "  n" << i << " [label=\"" << label << "\"";
    if (node.is_leaf()) out << ", style=rounded";
    out << "];\n";
  }
  for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    out << "  n" << node.parent << " -> n" << i << " [label=\""
        << escape_dot(mech.observations()[node.observation] + " (" + format_exact(node.arc_probability) + ")")
        << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string strategy_dot(const Strategy& s) {
  std::ostringstream out;
  out << "digraph strategy {\n  node [shape=ellipse];\n";
  std::size_t next = 0;
  strategy_nodes(s, next, out);
  out << "}\n";
  return out.str();
}

}  // namespace qif
