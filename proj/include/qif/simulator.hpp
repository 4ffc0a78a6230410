#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qif/belief.hpp"
#include "qif/measures.hpp"
#include "qif/mechanism.hpp"
#include "qif/random.hpp"
#include "qif/strategy.hpp"

namespace qif {

struct Trace {
  std::size_t secret = 0;
  std::vector<std::size_t> actions;
  std::vector<std::size_t> observations;
};

/// Draws x from the prior, then one observation per action along the
/// strategy until it runs out of branches.
Trace sample_trace(const Mechanism& mech, const Belief& prior, const Strategy& s, Rng& rng);

/// Trials are split into fixed blocks of `block_size`; block b draws from
/// make_stream(seed, b) and blocks are merged in index order, so results do
/// not depend on `threads` (0 picks the hardware concurrency).
struct SimConfig {
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  std::size_t block_size = 4096;
};

struct SimEstimate {
  double estimate = 0.0;   ///< U(X) − mean of U(posterior)
  double std_error = 0.0;  ///< standard error of that mean
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

SimEstimate estimate_leakage(const Mechanism& mech, const Belief& prior, const Strategy& s,
                             const UncertaintyMeasure& measure, const SimConfig& config);

struct ConvergenceRow {
  std::size_t round;
  double leakage;
  double gap;  ///< max_leakage − leakage
};

/// Exact leakage of the lock-step strategy truncated to 1..max_rounds steps.
std::vector<ConvergenceRow> convergence_probe(const Mechanism& mech, const Belief& prior,
                                              const UncertaintyMeasure& measure, std::size_t max_rounds);

/// CSV with header round,leakage,gap.
void write_round_table(std::ostream& out, const std::vector<ConvergenceRow>& rows);

}  // namespace qif
