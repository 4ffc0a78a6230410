// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qif/boolean_form.hpp"
#include "qif/cli.hpp"
#include "qif/leakage.hpp"
#include "qif/planner.hpp"
#include "qif/scoring.hpp"
#include "qif/simulator.hpp"
#include "support/formulas.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "support/medical_data.hpp"

namespace qif {
namespace {

using testing::kLog10;
using testing::kLog3;
using testing::kLog5;

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

const auto kShannon = UncertaintyMeasure::shannon();
const auto kError = UncertaintyMeasure::error();
const auto kGuessing = UncertaintyMeasure::guessing();

// Random instances shared by the property criteria.
struct Instance {
  Mechanism mech;
  Belief prior;
  Strategy strategy;
};

std::vector<Instance> instances(std::uint64_t seed, std::size_t count, std::size_t max_length) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (std::size_t i = 0; i < count; ++i) {
    auto mech = testing::random_mechanism(rng, testing::random_shape(rng, 5, 3, 3));
    auto prior = testing::random_prior(rng, mech.num_secrets(), true);
    auto s = testing::random_strategy(rng, mech, 1 + uniform_index(rng, max_length));
    out.push_back({std::move(mech), std::move(prior), std::move(s)});
  }
  return out;
}

Outcome deterministic_db_regression() {
  Outcome o;
  const auto db = testing::medical_db();
  const auto s = testing::zip_first_strategy();
  const double h = leakage(db.mechanism, Belief::uniform(10), s, kShannon).leakage;
  const double e = leakage(db.mechanism, Belief::uniform(10), s, kError).leakage;
  o.check(std::abs(h - (kLog10 - 0.3 * kLog3 - 0.4)) <= 1e-6, "shannon " + fmt(h));
  o.check(std::abs(e - 0.5) <= 1e-9, "error " + fmt(e));
  o.detail = o.ok ? "shannon " + fmt(h) + ", error " + fmt(e) : o.detail;
  return o;
}

Outcome noisy_db_regression() {
  Outcome o;
  const auto db = testing::noisy_db();
  const auto s = testing::zip_first_strategy();
  const double h = leakage(db.mechanism, Belief::uniform(10), s, kShannon).leakage;
  const double e = leakage(db.mechanism, Belief::uniform(10), s, kError).leakage;
  o.check(std::abs(h - (kLog10 - 0.3 * kLog3 - 8.0 / 15)) <= 1e-6, "shannon " + fmt(h));
  o.check(std::abs(e - 13.0 / 30) <= 1e-9, "error " + fmt(e));
  o.detail = o.ok ? "shannon " + fmt(h) + ", error " + fmt(e) : o.detail;
  return o;
}

Outcome nonadaptive_pass() {
  Outcome o;
  const auto db = testing::medical_db();
  const double v = leakage(db.mechanism, Belief::uniform(10), Strategy::from_list({"ZIP", "Date", "Age"}), kShannon).leakage;
  const double m = max_leakage(db.mechanism, Belief::uniform(10), kShannon);
  o.check(std::abs(v - (kLog10 - 0.4)) <= 1e-6, "leakage " + fmt(v));
  o.check(std::abs(v - m) <= 1e-9, "max_leakage " + fmt(m));
  if (o.ok) o.detail = "leakage " + fmt(v) + " = max_leakage";
  return o;
}

Outcome capacities() {
  Outcome o;
  const auto mech = testing::medical_db().mechanism;
  const auto k = indistinguishability_classes(mech).size();
  const double h = capacity(mech, MeasureKind::Shannon);
  const double e = capacity(mech, MeasureKind::Error);
  o.check(k == 8, "K=" + std::to_string(k));
  o.check(h == 3.0, "shannon " + fmt(h));
  o.check(e == 0.875, "error " + fmt(e));
  if (o.ok) o.detail = "K=8, shannon 3, error 0.875";
  return o;
}

// Root action, optimal value and Age-branch reward to 1e-2; the ZIP and Date
// branch rewards against their exact closed forms.
Outcome planner_noisy_db() {
  Outcome o;
  const auto db = testing::noisy_db();
  const auto plan = optimal_strategy(db.mechanism, Belief::uniform(10), kShannon, 2);
  double zip = 0, date = 0, age = 0;
  for (const auto& [a, q] : plan.action_values) (a == "ZIP" ? zip : a == "Date" ? date : age) = q;
  o.check(plan.strategy.action() == "Age", "root " + plan.strategy.action());
  o.check(std::abs(plan.value - 2.4) <= 1e-2, "value " + fmt(plan.value));
  o.check(std::abs(age - 2.4) <= 1e-2, "Age branch " + fmt(age));
  o.check(std::abs(zip - (kLog10 - 7.0 / 15 - 0.3 * kLog3)) <= 1e-9, "ZIP branch " + fmt(zip));
  o.check(std::abs(date - (kLog10 - 7.0 / 15 - 0.2 * kLog3 - kLog5 / 6)) <= 1e-9, "Date branch " + fmt(date));
  if (o.ok) {
    o.detail = "root Age, value " + fmt(plan.value) + "; branches ZIP " + fmt(zip) + ", Date " + fmt(date) + ", Age " +
               fmt(age) + "";
  }
  return o;
}

Outcome bellman_oracle() {
  Outcome o;
  Rng rng(6006);
  std::size_t compared = 0;
  for (int t = 0; t < 50; ++t) {
    const auto mech = testing::random_mechanism(rng, testing::random_shape(rng, 5, 3, 3));
    const auto prior = testing::random_prior(rng, mech.num_secrets(), true);
    for (std::size_t l = 1; l <= 2; ++l) {
      const double plan = optimal_strategy(mech, prior, kShannon, l).value;
      const double oracle = exhaustive_oracle(mech, prior, kShannon, l).value;
      o.check(std::abs(plan - oracle) <= 1e-9, "instance " + std::to_string(t) + " l=" + std::to_string(l));
      ++compared;
    }
  }
  if (o.ok) o.detail = std::to_string(compared) + " planner/oracle pairs agree";
  return o;
}

Outcome expansion_suite() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& inst : instances(7007, 100, 3)) {
    const auto expanded = expand_nonadaptive(inst.strategy);
    o.check(expanded.length() == inst.strategy.range().size() * inst.strategy.length(), "length mismatch");
    for (const auto& m : {kShannon, kError, kGuessing}) {
      o.check(leakage(inst.mech, inst.prior, expanded, m).leakage >=
                  leakage(inst.mech, inst.prior, inst.strategy, m).leakage - 1e-9,
              "expanded leaks less (" + m.name() + ")");
    }
    ++n;
  }
  if (o.ok) o.detail = std::to_string(n) + " instances";
  return o;
}

Outcome chain_rule() {
  Outcome o;
  for (const auto& inst : instances(8008, 100, 3)) {
    for (const auto& m : {kShannon, kError, kGuessing}) {
      const double direct = leakage(inst.mech, inst.prior, inst.strategy, m).leakage;
      o.check(std::abs(chain_decompose(inst.mech, inst.prior, inst.strategy, m).total - direct) <= 1e-9,
              "recombination differs (" + m.name() + ")");
      o.check(std::abs(testing::brute_force_leakage(inst.mech, inst.prior, inst.strategy, m) - direct) <= 1e-9,
              "joint enumeration differs (" + m.name() + ")");
    }
  }
  if (o.ok) o.detail = "100 instances, 3 measures";
  return o;
}

Outcome bound_suite() {
  Outcome o;
  std::size_t checked = 0;
  for (std::uint64_t seed : {7007u, 8008u, 9009u}) {
    for (const auto& inst : instances(seed, 100, 3)) {
      for (const auto& m : {kShannon, kError, kGuessing}) {
        const double ceiling = max_leakage(inst.mech, inst.prior, m);
        double previous = -1e-9;
        for (std::size_t n = 0; n < inst.strategy.length(); ++n) {
          const double v = leakage(inst.mech, inst.prior, truncate(inst.strategy, n), m).leakage;
          o.check(v >= -1e-9 && v <= ceiling + 1e-9, "bound violated (" + m.name() + ")");
          o.check(v >= previous - 1e-9, "truncation not monotone (" + m.name() + ")");
          previous = v;
          ++checked;
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " truncations";
  return o;
}

Outcome psr_suite() {
  Outcome o;
  Rng rng(1010);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + uniform_index(rng, 5);
    const auto p = testing::random_prior(rng, n);
    const auto q = testing::random_prior(rng, n);
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) values.push_back(uniform01(rng) * 10 - 5);
    for (const auto& m : {kShannon, kError, UncertaintyMeasure::variance(values)}) {
      const auto rule = psr_from_measure(m);
      const double self = expected_score(rule, p, p);
      o.check(std::abs(self - m(p.probs())) <= 1e-9, "S(p,p) != U(p) (" + m.name() + ")");
      o.check(self <= expected_score(rule, p, q) + 1e-9, "not proper (" + m.name() + ")");
    }
  }
  double worst = 0.0;
  for (const auto& m : {kShannon, kError, kGuessing, UncertaintyMeasure::variance(std::vector<double>{0, 1, 4, 9, 16})}) {
    worst = std::max(worst, concavity_probe(m, 5, 1000, 11).worst_violation);
  }
  o.check(worst <= 1e-9, "concavity violation " + fmt(worst));
  if (o.ok) o.detail = "1000 pairs x 3 rules; worst concavity violation " + fmt(worst);
  return o;
}

Outcome sat_reduction() {
  Outcome o;
  Rng rng(1111);
  int sat = 0;
  for (int t = 0; t < 50; ++t) {
    auto text = testing::random_formula(rng, 1 + uniform_index(rng, 8), 4);
    // Every fifth formula is forced unsatisfiable as g & !g.
    if (t % 5 == 4) text = "(" + text + ") & !(" + text + ")";
    const auto f = BooleanFormula::parse(text);
    const auto mech = boolean_form_build(f);
    bool leaks = false;
    for (const auto& a : mech.actions()) {
      leaks = leaks || leakage(mech, Belief::uniform(2), Strategy(a), kShannon).leakage > 1e-9;
    }
    o.check(leaks == testing::brute_force_satisfiable(f), "mismatch on " + f.text());
    sat += leaks;
  }
  if (o.ok) o.detail = "50 formulas, " + std::to_string(sat) + " satisfiable";
  return o;
}

Outcome simulator() {
  Outcome o;
  const auto s = testing::zip_first_strategy();
  SimConfig config;
  config.trials = 100000;
  std::string detail;
  struct Target {
    MechanismFile db;
    const UncertaintyMeasure* measure;
    double exact;
  };
  const std::vector<Target> targets{{testing::medical_db(), &kShannon, kLog10 - 0.3 * kLog3 - 0.4},
                                    {testing::medical_db(), &kError, 0.5},
                                    {testing::noisy_db(), &kShannon, kLog10 - 0.3 * kLog3 - 8.0 / 15},
                                    {testing::noisy_db(), &kError, 13.0 / 30}};
  double worst = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    config.seed = 1200 + i;
    const auto e = estimate_leakage(targets[i].db.mechanism, Belief::uniform(10), s, *targets[i].measure, config);
    const double z = std::abs(e.estimate - targets[i].exact) / e.std_error;
    worst = std::max(worst, z);
    o.check(z <= 4.0, "target " + std::to_string(i) + " off by " + fmt(z) + " SE");
  }
  const std::vector<std::string> args{"simulate", "--mechanism", testing::data_path("noisy-db.json"), "--strategy",
                                      testing::data_path("zip-first-strategy.json"), "--trials", "100000", "--seed", "42",
                                      "--json"};
  std::ostringstream a, b, err;
  cli::run(args, a, err);
  cli::run(args, b, err);
  o.check(!a.str().empty() && a.str() == b.str(), "repeated run differs");
  if (o.ok) o.detail = "worst deviation " + fmt(worst) + " SE; identical bytes on rerun";
  return o;
}

Outcome convergence() {
  Outcome o;
  const auto mech = testing::medical_db().mechanism;
  const auto rows = convergence_probe(mech, Belief::uniform(10), kShannon, 3);
  o.check(std::abs(rows[2].gap) <= 1e-9, "round 3 gap " + fmt(rows[2].gap));
  const Mechanism bsc({"0", "1"}, {"0", "1"}, {ActionMatrix{"flip", {{0.8, 0.2}, {0.2, 0.8}}}});
  const auto noisy = convergence_probe(bsc, Belief::uniform(2), kShannon, 10);
  for (std::size_t i = 1; i < noisy.size(); ++i) {
    o.check(noisy[i].leakage >= noisy[i - 1].leakage - 1e-9, "decreasing at round " + std::to_string(i + 1));
    o.check(noisy[i].gap < noisy[i - 1].gap, "gap not shrinking at round " + std::to_string(i + 1));
  }
  if (o.ok) o.detail = "medical DB gap 0 at round 3; channel gap " + fmt(noisy.front().gap) + " -> " + fmt(noisy.back().gap);
  return o;
}

}  // namespace
}  // namespace qif

int main() {
  using namespace qif;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"deterministic DB regression", deterministic_db_regression},
      {"noisy DB regression", noisy_db_regression},
      {"non-adaptive full pass attains maximum", nonadaptive_pass},
      {"capacities", capacities},
      {"planner on noisy DB", planner_noisy_db},
      {"planner equals exhaustive oracle", bellman_oracle},
      {"non-adaptive expansion suite", expansion_suite},
      {"chain rule", chain_rule},
      {"bounds and truncation monotonicity", bound_suite},
      {"proper scoring rules and concavity", psr_suite},
      {"satisfiability reduction", sat_reduction},
      {"simulator", simulator},
      {"convergence probe", convergence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    failed += !o.ok;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
