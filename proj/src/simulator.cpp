#include "qif/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

#include "qif/format.hpp"
#include "qif/leakage.hpp"

namespace qif {

namespace {

std::size_t draw(std::span<const double> probs, Rng& rng) {
  const double u = uniform01(rng);
  double cumulative = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last = i;
    cumulative += probs[i];
    if (u < cumulative) return i;
  }
  return last;  // rounding left u above the total mass
}

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.n == 0) return;
    const auto total = n + other.n;
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.n) / static_cast<double>(total);
    m2 += other.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(other.n) /
                         static_cast<double>(total);
    n = total;
  }
};

Moments run_block(const Mechanism& mech, const Belief& prior, const Strategy& s,
                  const UncertaintyMeasure& measure, std::uint64_t seed, std::size_t block, std::size_t count) {
  Rng rng = make_stream(seed, block);
  Moments m;
  std::vector<double> belief;
  std::vector<double> post;
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t x = draw(prior.probs(), rng);
    belief = prior.vector();
    const Strategy* node = &s;
    while (node) {
      const auto a = mech.action_index(node->action());
      const auto y = draw(mech.row(a, x), rng);
      bayes_update(mech, belief, a, y, post);
      belief.swap(post);
      node = node->child(mech.observations()[y]);
    }
    m.add(measure(belief));
  }
  return m;
}

}  // namespace

Trace sample_trace(const Mechanism& mech, const Belief& prior, const Strategy& s, Rng& rng) {
  Trace trace;
  trace.secret = draw(prior.probs(), rng);
  const Strategy* node = &s;
  while (node) {
    const auto a = mech.action_index(node->action());
    const auto y = draw(mech.row(a, trace.secret), rng);
    trace.actions.push_back(a);
    trace.observations.push_back(y);
    node = node->child(mech.observations()[y]);
  }
  return trace;
}

SimEstimate estimate_leakage(const Mechanism& mech, const Belief& prior, const Strategy& s,
                             const UncertaintyMeasure& measure, const SimConfig& config) {
  if (config.trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (config.block_size == 0) throw Error(ErrorCode::InvalidArgument, "block size must be >= 1");
  if (prior.size() != mech.num_secrets()) {
    throw Error(ErrorCode::InvalidBelief, "prior size does not match the secret set");
  }
  const std::size_t blocks = (config.trials + config.block_size - 1) / config.block_size;
  std::vector<Moments> parts(blocks);
  auto work = [&](std::size_t worker, std::size_t workers) {
    for (std::size_t b = worker; b < blocks; b += workers) {
      const std::size_t count = std::min(config.block_size, config.trials - b * config.block_size);
      parts[b] = run_block(mech, prior, s, measure, config.seed, b, count);
    }
  };
  std::size_t workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, blocks);
  if (workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  Moments total;
  for (const auto& part : parts) total.merge(part);
  SimEstimate out;
  out.trials = config.trials;
  out.seed = config.seed;
  out.estimate = uncertainty_eval(measure, prior) - total.mean;
  out.std_error = total.n > 1 ? std::sqrt(total.m2 / static_cast<double>(total.n - 1) / static_cast<double>(total.n))
                              : 0.0;
  return out;
}

std::vector<ConvergenceRow> convergence_probe(const Mechanism& mech, const Belief& prior,
                                              const UncertaintyMeasure& measure, std::size_t max_rounds) {
  if (max_rounds == 0) throw Error(ErrorCode::InvalidArgument, "max_rounds must be >= 1");
  const double ceiling = max_leakage(mech, prior, measure);
  std::vector<ConvergenceRow> rows;
  for (std::size_t r = 1; r <= max_rounds; ++r) {
    const double value = leakage(mech, prior, lockstep(mech, r), measure).leakage;
    rows.push_back({r, value, ceiling - value});
  }
  return rows;
}

void write_round_table(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "round,leakage,gap\n";
  for (const auto& row : rows) {
    out << row.round << ',' << format_number(row.leakage) << ',' << format_number(row.gap) << '\n';
  }
}

}  // namespace qif
