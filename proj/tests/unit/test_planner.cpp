#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "qif/leakage.hpp"
#include "qif/planner.hpp"
#include "support/generators.hpp"
#include "support/medical_data.hpp"

namespace qif {
namespace {

using testing::kLog10;
using testing::kLog3;
using testing::kLog5;

const auto kShannon = UncertaintyMeasure::shannon();

std::map<std::string, double> q_values(const PlanResult& plan) {
  return {plan.action_values.begin(), plan.action_values.end()};
}

TEST(OptimalStrategy, NoisyDbHorizonTwo) {
  const auto db = testing::noisy_db();
  const auto plan = optimal_strategy(db.mechanism, Belief::uniform(10), kShannon, 2);
  EXPECT_EQ(plan.strategy.action(), "Age");
  EXPECT_NEAR(plan.value, 2.4, 1e-2);
  EXPECT_NEAR(plan.value, kLog10 - 0.6 - 0.2 * kLog3, 1e-9);
  EXPECT_LE(plan.strategy.length(), 2u);
  EXPECT_NEAR(leakage(db.mechanism, Belief::uniform(10), plan.strategy, kShannon).leakage, plan.value, 1e-9);

  const auto q = q_values(plan);
  EXPECT_NEAR(q.at("Age"), 2.4, 1e-2);
  // Exact recomputation of the other root branches.
  EXPECT_NEAR(q.at("ZIP"), kLog10 - 7.0 / 15 - 0.3 * kLog3, 1e-9);
  EXPECT_NEAR(q.at("Date"), kLog10 - 7.0 / 15 - 0.2 * kLog3 - kLog5 / 6, 1e-9);
}

// Valuing the z3 subtree at log3 − 4/3 instead of its exact log3 − 4/9 moves
// the ZIP branch to about 2.11.
TEST(OptimalStrategy, ZipBranchWithCoarserZ3Value) {
  const auto db = testing::noisy_db();
  const auto& mech = db.mechanism;
  const auto prior = Belief::uniform(10);
  const auto zip = mech.action_index("ZIP");
  const double head = action_leakage(mech, prior.probs(), zip, kShannon);
  std::map<std::string, double> child_values;
  for (const auto& y : {"z1", "z2", "z3"}) {
    const auto post = belief_update(mech, prior, "ZIP", y);
    child_values[y] = optimal_strategy(mech, post, kShannon, 1).value;
  }
  EXPECT_NEAR(child_values["z1"], kLog5 - 0.4 - 0.6 * kLog3, 1e-9);
  EXPECT_NEAR(child_values["z2"], 1.0 / 3, 1e-9);
  EXPECT_NEAR(child_values["z3"], kLog3 - 4.0 / 9, 1e-9);
  const double with_coarser_z3 = head + 0.5 * child_values["z1"] + 0.2 * child_values["z2"] + 0.3 * (kLog3 - 4.0 / 3);
  EXPECT_NEAR(with_coarser_z3, 2.11, 1e-2);
}

TEST(OptimalStrategy, HorizonOnePicksBestSingleAction) {
  const auto db = testing::noisy_db();
  const auto plan = optimal_strategy(db.mechanism, Belief::uniform(10), kShannon, 1);
  double best = -1.0;
  std::string best_action;
  for (const auto& a : db.mechanism.actions()) {
    const double v = leakage(db.mechanism, Belief::uniform(10), Strategy(a), kShannon).leakage;
    if (v > best + 1e-12) {
      best = v;
      best_action = a;
    }
  }
  EXPECT_EQ(plan.strategy, Strategy(best_action));
  EXPECT_NEAR(plan.value, best, 1e-12);
}

TEST(OptimalStrategy, OneClassMechanismGivesZero) {
  const Mechanism flat({"x0", "x1", "x2"}, {"y0", "y1"},
                       {ActionMatrix{"a", {{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}}}});
  for (std::size_t l = 1; l <= 3; ++l) EXPECT_NEAR(optimal_strategy(flat, Belief::uniform(3), kShannon, l).value, 0.0, 1e-12);
}

TEST(OptimalStrategy, RejectsZeroHorizonAndHugeBudgets) {
  const auto db = testing::noisy_db();
  try {
    optimal_strategy(db.mechanism, Belief::uniform(10), kShannon, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
  try {
    optimal_strategy(db.mechanism, Belief::uniform(10), kShannon, 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(MdpSizeEstimate, Examples) {
  const Mechanism small({"x0", "x1"}, {"y0", "y1"},
                        {ActionMatrix{"a", {{1, 0}, {0, 1}}}, ActionMatrix{"b", {{1, 0}, {1, 0}}}});
  EXPECT_EQ(mdp_size_estimate(small, 1).decision_nodes, 15.0);
  EXPECT_EQ(mdp_size_estimate(small, 1).work, 32.0);
  EXPECT_EQ(mdp_size_estimate(testing::medical_db().mechanism, 2).decision_nodes, 36.0 * 36 * 36 - 1);
}

TEST(ExhaustiveOracle, Counts) {
  const Mechanism small({"x0", "x1"}, {"y0", "y1"},
                        {ActionMatrix{"a", {{1, 0}, {0, 1}}}, ActionMatrix{"b", {{1, 0}, {1, 0}}}});
  EXPECT_EQ(complete_strategy_count(small, 2), 8.0);
  EXPECT_EQ(exhaustive_oracle(small, Belief::uniform(2), kShannon, 2).nodes_expanded, 8u);
  EXPECT_EQ(exhaustive_oracle(small, Belief::uniform(2), kShannon, 1).nodes_expanded, 2u);
  try {
    exhaustive_oracle(testing::medical_db().mechanism, Belief::uniform(10), kShannon, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyStrategies);
  }
}

TEST(ExhaustiveOracle, TiesKeepLexicographicallySmallest) {
  const Mechanism mech({"x0", "x1"}, {"y0", "y1"},
                       {ActionMatrix{"a", {{1, 0}, {0, 1}}}, ActionMatrix{"b", {{1, 0}, {0, 1}}}});
  const auto plan = exhaustive_oracle(mech, Belief::uniform(2), kShannon, 2);
  EXPECT_EQ(plan.strategy, Strategy("a", {{"y0", Strategy("a")}, {"y1", Strategy("a")}}));
  EXPECT_EQ(optimal_strategy(mech, Belief::uniform(2), kShannon, 2).strategy.action(), "a");
}

TEST(PlannerProperties, MatchesOracleAndBellman) {
  Rng rng(606);
  const std::vector<UncertaintyMeasure> measures{kShannon, UncertaintyMeasure::error(), UncertaintyMeasure::guessing()};
  for (int t = 0; t < 50; ++t) {
    const auto mech = testing::random_mechanism(rng, testing::random_shape(rng, 5, 3, 3));
    const auto prior = testing::random_prior(rng, mech.num_secrets(), true);
    for (std::size_t l = 1; l <= 2; ++l) {
      for (const auto& m : measures) {
        const auto plan = optimal_strategy(mech, prior, m, l);
        const auto oracle = exhaustive_oracle(mech, prior, m, l);
        EXPECT_NEAR(plan.value, oracle.value, 1e-9) << m.name();
        EXPECT_NEAR(leakage(mech, prior, plan.strategy, m).leakage, plan.value, 1e-9);
        EXPECT_LE(plan.value, max_leakage(mech, prior, m) + 1e-9);
        double best = -1e300;
        for (const auto& [a, q] : plan.action_values) best = std::max(best, q);
        EXPECT_NEAR(best, plan.value, 1e-12);
        if (l == 2) EXPECT_GE(plan.value, optimal_strategy(mech, prior, m, 1).value - 1e-9);
      }
    }
  }
}

TEST(PlannerProperties, Deterministic) {
  const auto db = testing::noisy_db();
  const auto a = optimal_strategy(db.mechanism, Belief::uniform(10), kShannon, 2);
  const auto b = optimal_strategy(db.mechanism, Belief::uniform(10), kShannon, 2);
  EXPECT_EQ(a.strategy, b.strategy);
  EXPECT_EQ(a.value, b.value);
}

}  // namespace
}  // namespace qif
