#include "qif/cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qif/format.hpp"
#include "qif/io.hpp"
#include "qif/leakage.hpp"
#include "qif/partition.hpp"
#include "qif/planner.hpp"
#include "qif/scoring.hpp"
#include "qif/simulator.hpp"
#include "qif/table.hpp"

namespace qif::cli {

namespace {

struct Options {
  std::string path;
  std::string mechanism;
  std::string strategy;
  std::string measure = "shannon";
  std::string dot;
  std::string out_path;
  std::string csv;
  std::string secret_col;
  std::vector<std::string> attrs;
  std::vector<std::string> noise;
  std::string at;
  std::size_t horizon = 1;
  double budget = kDefaultPlanBudget;
  bool json = false;
  bool search = false;
  bool dedupe = false;
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  std::size_t trials = 100000;
  std::size_t threads = 0;
  std::size_t rounds = 0;
};

// Loads a mechanism and rejects it unless every row is stochastic.
MechanismFile load_valid(const std::string& path) {
  auto file = load_mechanism(path);
  const auto report = validate(file.mechanism);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::InvalidMechanism,
                "action '" + v.action + "', secret '" + v.secret + "': " + v.reason);
  }
  return file;
}

UncertaintyMeasure measure_for(const Options& o, const Mechanism& mech) {
  return UncertaintyMeasure::from_name(o.measure, mech.secret_values());
}

// Fractions are reported only when every probability is a small-denominator
// rational and the measure keeps values rational.
bool exact_reportable(const UncertaintyMeasure& measure, const Mechanism& mech, const Belief& prior) {
  if (measure.kind() == MeasureKind::Shannon || measure.kind() == MeasureKind::Custom) return false;
  for (double p : prior.probs()) {
    if (!as_fraction(p)) return false;
  }
  for (std::size_t a = 0; a < mech.num_actions(); ++a) {
    for (std::size_t x = 0; x < mech.num_secrets(); ++x) {
      for (double p : mech.row(a, x)) {
        if (!as_fraction(p)) return false;
      }
    }
  }
  if (mech.secret_values()) {
    for (double v : *mech.secret_values()) {
      if (!as_fraction(v)) return false;
    }
  }
  return true;
}

void emit(std::ostream& out, const Options& o, const Json& j, const std::string& text) {
  if (o.json) {
    out << j.dump(2) << '\n';
  } else {
    out << text;
  }
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto file = load_mechanism(o.path);
  const auto& mech = file.mechanism;
  const auto report = validate(mech);
  Json j;
  j["valid"] = report.ok();
  j["violations"] = Json::array();
  std::ostringstream text;
  for (const auto& v : report.violations) {
    j["violations"].push_back({{"action", v.action},
                               {"secret", v.secret},
                               {"row_sum", number_json(v.row_sum)},
                               {"min_entry", number_json(v.min_entry)},
                               {"reason", v.reason}});
    text << "violation: action " << v.action << ", secret " << v.secret << ": " << v.reason
         << " (row sum " << format_number(v.row_sum) << ", min entry " << format_number(v.min_entry) << ")\n";
  }
  if (report.ok()) {
    text << "valid: " << mech.num_secrets() << " secrets, " << mech.num_observations() << " observations, "
         << mech.num_actions() << " actions\n";
  }
  emit(out, o, j, text.str());
  return report.ok() ? kOk : kDomain;
}

int cmd_leakage(const Options& o, std::ostream& out) {
  const auto file = load_valid(o.mechanism);
  const auto strategy = load_strategy(o.strategy);
  const auto prior = file.prior_or_uniform();
  const auto measure = measure_for(o, file.mechanism);
  const auto report = leakage(file.mechanism, prior, strategy, measure);
  const bool exact = exact_reportable(measure, file.mechanism, prior);
  if (!o.dot.empty()) {
    write_text_file(o.dot, attack_tree_dot(file.mechanism, build_attack_tree(file.mechanism, prior, strategy)));
  }
  std::ostringstream text;
  text << "measure: " << report.measure << '\n'
       << "prior_uncertainty: " << format_number(report.prior_uncertainty) << '\n'
       << "conditional_uncertainty: " << format_number(report.conditional_uncertainty) << '\n'
       << "leakage: " << format_number(report.leakage);
  if (exact && as_fraction(report.leakage)) text << " (" << format_exact(report.leakage) << ')';
  text << '\n';
  emit(out, o, report_to_json(report, exact), text.str());
  return kOk;
}

int cmd_optimal(const Options& o, std::ostream& out) {
  const auto file = load_valid(o.mechanism);
  const auto measure = measure_for(o, file.mechanism);
  const auto plan = optimal_strategy(file.mechanism, file.prior_or_uniform(), measure, o.horizon, o.budget);
  if (!o.out_path.empty()) write_text_file(o.out_path, strategy_to_json(plan.strategy).dump(2) + "\n");
  if (!o.dot.empty()) write_text_file(o.dot, strategy_dot(plan.strategy));
  std::ostringstream text;
  text << "value: " << format_number(plan.value) << '\n' << "root_action: " << plan.strategy.action() << '\n';
  for (const auto& [action, q] : plan.action_values) text << "action_value " << action << ": " << format_number(q) << '\n';
  emit(out, o, plan_to_json(plan), text.str());
  return kOk;
}

int cmd_classes(const Options& o, std::ostream& out) {
  const auto file = load_valid(o.mechanism);
  const auto& mech = file.mechanism;
  const auto classes = indistinguishability_classes(mech);
  Json j;
  j["count"] = classes.size();
  j["classes"] = Json::array();
  std::ostringstream text;
  text << "K=" << classes.size() << '\n';
  for (const auto& c : classes.classes()) {
    std::vector<std::string> names;
    for (auto x : c) names.push_back(mech.secrets()[x]);
    j["classes"].push_back(names);
    text << '{' << join(names, ", ") << "}\n";
  }
  emit(out, o, j, text.str());
  return kOk;
}

int cmd_maxleak(const Options& o, std::ostream& out) {
  const auto file = load_valid(o.mechanism);
  const auto prior = file.prior_or_uniform();
  const auto measure = measure_for(o, file.mechanism);
  const double value = max_leakage(file.mechanism, prior, measure);
  Json j;
  j["measure"] = measure.name();
  j["max_leakage"] = number_json(value);
  if (exact_reportable(measure, file.mechanism, prior) && as_fraction(value)) j["exact"] = format_exact(value);
  emit(out, o, j, "max_leakage: " + format_number(value) + "\n");
  return kOk;
}

int cmd_capacity(const Options& o, std::ostream& out) {
  const auto file = load_valid(o.mechanism);
  const auto& mech = file.mechanism;
  const auto measure = measure_for(o, mech);
  Json j;
  j["measure"] = measure.name();
  double value = 0.0;
  const bool closed = measure.kind() == MeasureKind::Shannon || measure.kind() == MeasureKind::Error;
  if (closed) {
    value = capacity(mech, measure.kind());
    j["method"] = "closed_form";
  } else if (o.search) {
    auto found = capacity_search(mech, measure, o.restarts, o.seed);
    value = found.value;
    j["method"] = "search";
    Json prior = Json::array();
    for (double p : found.prior.probs()) prior.push_back(number_json(p));
    j["prior"] = std::move(prior);
  } else {
    capacity(mech, measure.kind());  // throws UnsupportedMeasure
  }
  j["classes"] = indistinguishability_classes(mech).size();
  j["capacity"] = number_json(value);
  std::string text = "capacity: " + format_number(value);
  if (!closed) text += " (search lower bound)";
  emit(out, o, j, text + "\n");
  return kOk;
}

int cmd_expand(const Options& o, std::ostream& out) {
  auto strategy = expand_nonadaptive(load_strategy(o.strategy));
  if (o.dedupe) {
    if (o.mechanism.empty()) throw Error(ErrorCode::InvalidArgument, "--dedupe-deterministic requires --mechanism");
    strategy = dedupe_for_deterministic(strategy, load_valid(o.mechanism).mechanism);
  }
  const auto j = strategy_to_json(strategy);
  if (!o.out_path.empty()) write_text_file(o.out_path, j.dump(2) + "\n");
  std::string text = "length: " + std::to_string(strategy.length()) + "\n";
  if (auto list = strategy.as_list()) text += "actions: " + join(*list, ", ") + "\n";
  emit(out, o, j, text);
  return kOk;
}

int cmd_ingest(const Options& o, std::ostream& out) {
  NoiseSpec noise;
  for (const auto& spec : o.noise) {
    const auto colon = spec.rfind(':');
    int radius = -1;
    if (colon != std::string::npos && colon > 0) {
      try {
        std::size_t used = 0;
        radius = std::stoi(spec.substr(colon + 1), &used);
        if (used != spec.size() - colon - 1) radius = -1;
      } catch (const std::exception&) {
        radius = -1;
      }
    }
    if (radius < 0) throw Error(ErrorCode::InvalidArgument, "--noise expects col:radius, got '" + spec + "'");
    noise[spec.substr(0, colon)] = radius;
  }
  const auto mech = table_ingest(read_csv_file(o.csv), o.secret_col, o.attrs, noise);
  const std::string text = mechanism_to_json(mech).dump(2) + "\n";
  if (!o.out_path.empty()) {
    write_text_file(o.out_path, text);
    if (!o.json) {
      out << "wrote " << o.out_path << ": " << mech.num_secrets() << " secrets, " << mech.num_observations()
          << " observations, " << mech.num_actions() << " actions\n";
      return kOk;
    }
  }
  out << text;
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto file = load_valid(o.mechanism);
  const auto prior = file.prior_or_uniform();
  const auto measure = measure_for(o, file.mechanism);
  if (o.rounds > 0) {
    const auto rows = convergence_probe(file.mechanism, prior, measure, o.rounds);
    Json j = Json::array();
    for (const auto& r : rows) {
      j.push_back({{"round", r.round}, {"leakage", number_json(r.leakage)}, {"gap", number_json(r.gap)}});
    }
    std::ostringstream text;
    write_round_table(text, rows);
    emit(out, o, j, text.str());
    return kOk;
  }
  if (o.strategy.empty()) throw Error(ErrorCode::InvalidArgument, "simulate requires --strategy or --rounds");
  SimConfig config;
  config.trials = o.trials;
  config.seed = o.seed;
  config.threads = o.threads;
  const auto est = estimate_leakage(file.mechanism, prior, load_strategy(o.strategy), measure, config);
  std::ostringstream text;
  text << "estimate: " << format_number(est.estimate) << '\n'
       << "std_error: " << format_number(est.std_error) << '\n'
       << "trials: " << est.trials << '\n'
       << "seed: " << est.seed << '\n';
  emit(out, o, simulation_to_json(est), text.str());
  return kOk;
}

int cmd_psr(const Options& o, std::ostream& out) {
  std::optional<Mechanism> mech;
  if (!o.mechanism.empty()) mech = load_valid(o.mechanism).mechanism;
  const auto measure =
      UncertaintyMeasure::from_name(o.measure, mech ? mech->secret_values() : std::optional<std::vector<double>>{});
  const Belief forecast(belief_from_json(read_json_file(o.at)));
  if (mech && mech->num_secrets() != forecast.size()) {
    throw Error(ErrorCode::InvalidBelief, "forecast length does not match the secret set");
  }
  const auto scores = psr_from_measure(measure).scores(forecast);
  Json j;
  j["measure"] = measure.name();
  j["uncertainty"] = number_json(uncertainty_eval(measure, forecast));
  Json arr = Json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    arr.push_back(number_json(scores[i]));
    text << "score " << (mech ? mech->secrets()[i] : std::to_string(i)) << ": " << format_number(scores[i]) << '\n';
  }
  j["scores"] = std::move(arr);
  emit(out, o, j, text.str());
  return kOk;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::UnsupportedMeasure:
    case ErrorCode::InvalidArgument:
      return kUsage;
    case ErrorCode::BudgetExceeded:
    case ErrorCode::TooManyStrategies:
      return kBudget;
    default:
      return kDomain;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Leakage analysis of action-based randomization mechanisms", "qif"};
  app.require_subcommand(1);

  auto mechanism_opt = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--mechanism", o.mechanism, "Mechanism JSON file");
    if (required) opt->required();
  };
  auto measure_opt = [&](CLI::App* sub) {
    sub->add_option("--measure", o.measure, "shannon, error, guessing or variance")->capture_default_str();
  };
  auto json_flag = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "Print JSON"); };

  auto* validate_cmd = app.add_subcommand("validate", "Check that every matrix row is stochastic");
  validate_cmd->add_option("path", o.path, "Mechanism JSON file")->required();
  json_flag(validate_cmd);

  auto* leakage_cmd = app.add_subcommand("leakage", "Exact leakage of a strategy");
  mechanism_opt(leakage_cmd, true);
  leakage_cmd->add_option("--strategy", o.strategy, "Strategy JSON file")->required();
  measure_opt(leakage_cmd);
  json_flag(leakage_cmd);
  leakage_cmd->add_option("--dot", o.dot, "Write the attack tree as DOT");

  auto* optimal_cmd = app.add_subcommand("optimal", "Optimal finite-horizon strategy");
  mechanism_opt(optimal_cmd, true);
  optimal_cmd->add_option("--horizon", o.horizon, "Strategy length")->required()->check(CLI::PositiveNumber);
  measure_opt(optimal_cmd);
  optimal_cmd->add_option("--budget", o.budget, "Decision-node budget")->capture_default_str();
  optimal_cmd->add_option("--out", o.out_path, "Write the strategy JSON");
  optimal_cmd->add_option("--dot", o.dot, "Write the strategy as DOT");
  json_flag(optimal_cmd);

  auto* classes_cmd = app.add_subcommand("classes", "Indistinguishability classes");
  mechanism_opt(classes_cmd, true);
  json_flag(classes_cmd);

  auto* maxleak_cmd = app.add_subcommand("maxleak", "Maximum leakage I(X;[X])");
  mechanism_opt(maxleak_cmd, true);
  measure_opt(maxleak_cmd);
  json_flag(maxleak_cmd);

  auto* capacity_cmd = app.add_subcommand("capacity", "Adaptive secrecy capacity");
  mechanism_opt(capacity_cmd, true);
  measure_opt(capacity_cmd);
  capacity_cmd->add_flag("--search", o.search, "Search priors when no closed form exists");
  capacity_cmd->add_option("--restarts", o.restarts, "Search restarts")->capture_default_str();
  capacity_cmd->add_option("--seed", o.seed, "Search seed")->capture_default_str();
  json_flag(capacity_cmd);

  auto* expand_cmd = app.add_subcommand("expand", "Non-adaptive expansion of a strategy");
  expand_cmd->add_option("--strategy", o.strategy, "Strategy JSON file")->required();
  expand_cmd->add_flag("--dedupe-deterministic", o.dedupe, "Keep one occurrence per action");
  mechanism_opt(expand_cmd, false);
  expand_cmd->add_option("--out", o.out_path, "Write the strategy JSON");
  json_flag(expand_cmd);

  auto* ingest_cmd = app.add_subcommand("ingest", "Build a mechanism from a CSV table");
  ingest_cmd->add_option("--csv", o.csv, "CSV file with a header row")->required();
  ingest_cmd->add_option("--secret-col", o.secret_col, "Secret identifier column")->required();
  ingest_cmd->add_option("--attrs", o.attrs, "Attribute columns, one action each")->required()->delimiter(',');
  ingest_cmd->add_option("--noise", o.noise, "Uniform offset noise as col:radius");
  ingest_cmd->add_option("--out", o.out_path, "Write the mechanism JSON");
  json_flag(ingest_cmd);

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo leakage estimate");
  mechanism_opt(simulate_cmd, true);
  simulate_cmd->add_option("--strategy", o.strategy, "Strategy JSON file");
  measure_opt(simulate_cmd);
  simulate_cmd->add_option("--trials", o.trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  simulate_cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)")->capture_default_str();
  simulate_cmd->add_option("--rounds", o.rounds, "Print the lock-step convergence table instead");
  json_flag(simulate_cmd);

  auto* psr_cmd = app.add_subcommand("psr", "Scores of the proper scoring rule induced by a measure");
  measure_opt(psr_cmd);
  psr_cmd->add_option("--at", o.at, "Forecast belief JSON file")->required();
  mechanism_opt(psr_cmd, false);
  json_flag(psr_cmd);

  std::vector<const char*> argv{"qif"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (leakage_cmd->parsed()) return cmd_leakage(o, out);
    if (optimal_cmd->parsed()) return cmd_optimal(o, out);
    if (classes_cmd->parsed()) return cmd_classes(o, out);
    if (maxleak_cmd->parsed()) return cmd_maxleak(o, out);
    if (capacity_cmd->parsed()) return cmd_capacity(o, out);
    if (expand_cmd->parsed()) return cmd_expand(o, out);
    if (ingest_cmd->parsed()) return cmd_ingest(o, out);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out);
    if (psr_cmd->parsed()) return cmd_psr(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace qif::cli
