#include <gtest/gtest.h>

#include <sstream>

#include "qif/leakage.hpp"
#include "qif/simulator.hpp"
#include "support/generators.hpp"
#include "support/medical_data.hpp"

namespace qif {
namespace {

using testing::kLog10;
using testing::kLog3;

const auto kShannon = UncertaintyMeasure::shannon();
const auto kError = UncertaintyMeasure::error();

TEST(SampleTrace, OneSecret) {
  const Mechanism mech({"only"}, {"y0", "y1"}, {ActionMatrix{"a", {{0.5, 0.5}}}});
  Rng rng(1);
  for (int t = 0; t < 20; ++t) EXPECT_EQ(sample_trace(mech, Belief::uniform(1), Strategy::from_list({"a", "a"}), rng).secret, 0u);
}

TEST(SampleTrace, DeterministicMechanismFollowsFunction) {
  const auto mech = testing::medical_db().mechanism;
  const auto s = testing::zip_first_strategy();
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto trace = sample_trace(mech, Belief::uniform(10), s, rng);
    ASSERT_EQ(trace.actions.size(), 2u);
    for (std::size_t j = 0; j < trace.actions.size(); ++j) {
      EXPECT_EQ(mech.prob(trace.actions[j], trace.secret, trace.observations[j]), 1.0);
    }
  }
}

TEST(SampleTrace, FirstObservationFrequency) {
  const auto mech = testing::medical_db().mechanism;
  const auto s = testing::zip_first_strategy();
  Rng rng(3);
  const std::size_t n = 100000;
  std::size_t hits = 0;
  const auto z2 = mech.observation_index("z2");
  for (std::size_t t = 0; t < n; ++t) hits += sample_trace(mech, Belief::uniform(10), s, rng).observations[0] == z2;
  const double freq = static_cast<double>(hits) / n;
  const double se = std::sqrt(0.2 * 0.8 / n);
  EXPECT_NEAR(freq, 0.2, 3 * se);
}

TEST(EstimateLeakage, MedicalDbTargets) {
  const auto s = testing::zip_first_strategy();
  SimConfig config;
  config.trials = 100000;
  config.seed = 17;
  const auto det = testing::medical_db().mechanism;
  auto e = estimate_leakage(det, Belief::uniform(10), s, kShannon, config);
  EXPECT_NEAR(e.estimate, kLog10 - 0.3 * kLog3 - 0.4, 4 * e.std_error);
  const auto noisy = testing::noisy_db().mechanism;
  e = estimate_leakage(noisy, Belief::uniform(10), s, kError, config);
  EXPECT_NEAR(e.estimate, 13.0 / 30, 4 * e.std_error);
  EXPECT_EQ(e.trials, 100000u);
  EXPECT_EQ(e.seed, 17u);
}

TEST(EstimateLeakage, IndependenceGivesZero) {
  const Mechanism mech({"x0", "x1"}, {"y0", "y1"}, {ActionMatrix{"a", {{0.3, 0.7}, {0.3, 0.7}}}});
  SimConfig config;
  config.trials = 5000;
  const auto e = estimate_leakage(mech, Belief::uniform(2), Strategy::from_list({"a", "a"}), kShannon, config);
  EXPECT_NEAR(e.estimate, 0.0, 1e-12);
}

TEST(EstimateLeakage, ReproducibleAcrossThreadCounts) {
  const auto mech = testing::noisy_db().mechanism;
  SimConfig config;
  config.trials = 20000;
  config.seed = 99;
  config.block_size = 1000;
  config.threads = 1;
  const auto a = estimate_leakage(mech, Belief::uniform(10), testing::zip_first_strategy(), kShannon, config);
  config.threads = 4;
  const auto b = estimate_leakage(mech, Belief::uniform(10), testing::zip_first_strategy(), kShannon, config);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.std_error, b.std_error);
  config.seed = 100;
  const auto c = estimate_leakage(mech, Belief::uniform(10), testing::zip_first_strategy(), kShannon, config);
  EXPECT_NE(a.estimate, c.estimate);
}

TEST(EstimateLeakage, StatisticallyConsistent) {
  const auto mech = testing::noisy_db().mechanism;
  const auto s = testing::zip_first_strategy();
  const double exact = leakage(mech, Belief::uniform(10), s, kShannon).leakage;
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SimConfig config;
    config.trials = 2000;
    config.seed = seed;
    const auto e = estimate_leakage(mech, Belief::uniform(10), s, kShannon, config);
    inside += std::abs(e.estimate - exact) <= 4 * e.std_error;
  }
  EXPECT_GE(inside, 99);
}

TEST(EstimateLeakage, RejectsZeroTrials) {
  SimConfig config;
  config.trials = 0;
  EXPECT_THROW(estimate_leakage(testing::medical_db().mechanism, Belief::uniform(10), Strategy("ZIP"), kShannon, config),
               Error);
}

TEST(ConvergenceProbe, DeterministicDbReachesMaximumByRoundThree) {
  const auto mech = testing::medical_db().mechanism;
  const auto rows = convergence_probe(mech, Belief::uniform(10), kShannon, 5);
  ASSERT_EQ(rows.size(), 5u);
  const double ceiling = max_leakage(mech, Belief::uniform(10), kShannon);
  EXPECT_NEAR(rows[2].leakage, ceiling, 1e-9);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i].leakage, rows[i - 1].leakage - 1e-9);
}

TEST(ConvergenceProbe, NoisyBinaryChannelGapShrinksStrictly) {
  const Mechanism bsc({"0", "1"}, {"0", "1"}, {ActionMatrix{"flip", {{0.8, 0.2}, {0.2, 0.8}}}});
  const auto rows = convergence_probe(bsc, Belief::uniform(2), kShannon, 10);
  EXPECT_NEAR(rows.front().gap + rows.front().leakage, 1.0, 1e-12);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GT(rows[i].leakage, rows[i - 1].leakage);
    EXPECT_LT(rows[i].gap, rows[i - 1].gap);
    EXPECT_GE(rows[i].gap, -1e-9);
  }
}

TEST(ConvergenceProbe, OneClassIsFlatZero) {
  const Mechanism flat({"x0", "x1"}, {"y"}, {ActionMatrix{"a", {{1.0}, {1.0}}}});
  for (const auto& row : convergence_probe(flat, Belief::uniform(2), kShannon, 4)) EXPECT_NEAR(row.leakage, 0.0, 1e-12);
}

TEST(ConvergenceProbe, RoundTable) {
  const Mechanism bsc({"0", "1"}, {"0", "1"}, {ActionMatrix{"flip", {{1.0, 0.0}, {0.0, 1.0}}}});
  std::ostringstream out;
  write_round_table(out, convergence_probe(bsc, Belief::uniform(2), kShannon, 2));
  EXPECT_EQ(out.str(), "round,leakage,gap\n1,1,0\n2,1,0\n");
}

}  // namespace
}  // namespace qif
