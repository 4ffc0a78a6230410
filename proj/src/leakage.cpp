#include "qif/leakage.hpp"

#include <algorithm>
#include <cmath>

#include "qif/random.hpp"

namespace qif {

namespace {

void check_prior(const Mechanism& mech, const Belief& prior) {
  if (prior.size() != mech.num_secrets()) {
    throw Error(ErrorCode::InvalidBelief, "prior size does not match the secret set");
  }
}

void spend(std::size_t& visited, std::size_t budget) {
  if (++visited > budget) {
    throw Error(ErrorCode::BudgetExceeded, "attack tree exceeds " + std::to_string(budget) + " nodes");
  }
}

std::size_t build(const Mechanism& mech, const Strategy& s, AttackTree& tree, std::size_t self,
                  std::size_t& visited, std::size_t budget) {
  const auto action = mech.action_index(s.action());
  tree.nodes[self].action = action;
  std::vector<double> post;
  for (std::size_t y = 0; y < mech.num_observations(); ++y) {
    const double p = bayes_update(mech, tree.nodes[self].belief, action, y, post);
    if (p < kPruneThreshold) continue;
    spend(visited, budget);
    AttackNode child;
    child.parent = self;
    child.observation = y;
    child.arc_probability = p;
    child.path_probability = tree.nodes[self].path_probability * p;
    child.belief = post;
    const auto index = tree.nodes.size();
    tree.nodes.push_back(std::move(child));
    tree.nodes[self].children.push_back(index);
    if (const Strategy* next = s.child(mech.observations()[y])) build(mech, *next, tree, index, visited, budget);
  }
  return self;
}

struct Accumulator {
  double weighted_uncertainty = 0.0;
  std::size_t traces = 0;
};

// Σ_leaf π_h·U(p^h) below a node with path weight `weight`, summed in
// observation order.
void accumulate(const Mechanism& mech, std::span<const double> belief, double weight, const Strategy& s,
                const UncertaintyMeasure& measure, Accumulator& acc, std::size_t& visited,
                std::size_t budget) {
  const auto action = mech.action_index(s.action());
  std::vector<double> post;
  for (std::size_t y = 0; y < mech.num_observations(); ++y) {
    const double p = bayes_update(mech, belief, action, y, post);
    if (p < kPruneThreshold) continue;
    spend(visited, budget);
    if (const Strategy* next = s.child(mech.observations()[y])) {
      accumulate(mech, post, weight * p, *next, measure, acc, visited, budget);
    } else {
      acc.weighted_uncertainty += weight * p * measure(post);
      ++acc.traces;
    }
  }
}

}  // namespace

std::vector<std::size_t> AttackTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) out.push_back(i);
  }
  return out;
}

AttackTree build_attack_tree(const Mechanism& mech, const Belief& prior, const Strategy& s,
                             std::size_t node_budget) {
  check_prior(mech, prior);
  AttackTree tree;
  AttackNode root;
  root.belief = prior.vector();
  tree.nodes.push_back(std::move(root));
  std::size_t visited = 1;
  build(mech, s, tree, 0, visited, node_budget);
  return tree;
}

LeakageReport leakage(const Mechanism& mech, const Belief& prior, const Strategy& s,
                      const UncertaintyMeasure& measure, std::size_t node_budget) {
  check_prior(mech, prior);
  LeakageReport report;
  report.measure = measure.name();
  report.prior_uncertainty = uncertainty_eval(measure, prior);
  Accumulator acc;
  std::size_t visited = 1;
  accumulate(mech, prior.probs(), 1.0, s, measure, acc, visited, node_budget);
  report.conditional_uncertainty = acc.weighted_uncertainty;
  report.leakage = report.prior_uncertainty - report.conditional_uncertainty;
  report.strategy_length = s.length();
  report.trace_count = acc.traces;
  return report;
}

double action_leakage(const Mechanism& mech, std::span<const double> belief, std::size_t action,
                      const UncertaintyMeasure& measure) {
  double conditional = 0.0;
  std::vector<double> post;
  for (std::size_t y = 0; y < mech.num_observations(); ++y) {
    const double p = bayes_update(mech, belief, action, y, post);
    if (p < kPruneThreshold) continue;
    conditional += p * measure(post);
  }
  return measure(belief) - conditional;
}

double class_conditional_uncertainty(const Partition& classes, std::span<const double> prior,
                                     const UncertaintyMeasure& measure) {
  double total = 0.0;
  std::vector<double> conditional(prior.size());
  for (const auto& c : classes.classes()) {
    double mass = 0.0;
    for (std::size_t x : c) mass += prior[x];
    if (!(mass > 0.0)) continue;
    std::fill(conditional.begin(), conditional.end(), 0.0);
    for (std::size_t x : c) conditional[x] = prior[x] / mass;
    total += mass * measure(conditional);
  }
  return total;
}

double max_leakage(const Mechanism& mech, const Belief& prior, const UncertaintyMeasure& measure) {
  check_prior(mech, prior);
  const auto classes = indistinguishability_classes(mech);
  return uncertainty_eval(measure, prior) - class_conditional_uncertainty(classes, prior.probs(), measure);
}

double capacity(const Mechanism& mech, MeasureKind kind) {
  const auto k = static_cast<double>(indistinguishability_classes(mech).size());
  switch (kind) {
    case MeasureKind::Shannon: return std::log2(k);
    case MeasureKind::Error: return 1.0 - 1.0 / k;
    default:
      throw Error(ErrorCode::UnsupportedMeasure,
                  "no closed-form capacity for measure '" + std::string(to_string(kind)) + "'");
  }
}

CapacitySearchResult capacity_search(const Mechanism& mech, const UncertaintyMeasure& measure,
                                     std::size_t restarts, std::uint64_t seed) {
  if (restarts == 0) throw Error(ErrorCode::InvalidArgument, "restarts must be >= 1");
  const auto classes = indistinguishability_classes(mech);
  const std::size_t k = classes.size();
  const std::size_t n = mech.num_secrets();

  std::vector<double> embedded(n);
  auto objective = [&](const std::vector<double>& weights) {
    std::fill(embedded.begin(), embedded.end(), 0.0);
    for (std::size_t c = 0; c < k; ++c) embedded[classes.classes()[c].front()] = weights[c];
    return measure(embedded) - class_conditional_uncertainty(classes, embedded, measure);
  };

  Rng rng(seed);
  std::vector<double> best_weights;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < restarts; ++r) {
    std::vector<double> w = r == 0 ? std::vector<double>(k, 1.0 / static_cast<double>(k))
                                   : random_simplex_point(rng, k);
    double value = objective(w);
    for (double step = 0.25; step > 1e-9;) {
      bool improved = false;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (i == j) continue;
          const double move = std::min(step, w[j]);
          if (!(move > 0.0)) continue;
          w[i] += move;
          w[j] -= move;
          const double candidate = objective(w);
          if (candidate > value + 1e-15) {
            value = candidate;
            improved = true;
          } else {
            w[i] -= move;
            w[j] += move;
          }
        }
      }
      if (!improved) step /= 2.0;
    }
    if (value > best_value) {
      best_value = value;
      best_weights = w;
    }
  }

  std::vector<double> prior(n, 0.0);
  double mass = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    prior[classes.classes()[c].front()] = std::max(0.0, best_weights[c]);
    mass += prior[classes.classes()[c].front()];
  }
  for (auto& p : prior) p /= mass;
  return {Belief(std::move(prior)), best_value};
}

ChainDecomposition chain_decompose(const Mechanism& mech, const Belief& prior, const Strategy& s,
                                   const UncertaintyMeasure& measure) {
  check_prior(mech, prior);
  ChainDecomposition out;
  out.head_action = s.action();
  const auto action = mech.action_index(s.action());
  out.head = action_leakage(mech, prior.probs(), action, measure);
  out.total = out.head;
  std::vector<double> post;
  for (std::size_t y = 0; y < mech.num_observations(); ++y) {
    const double p = bayes_update(mech, prior.probs(), action, y, post);
    if (p < kPruneThreshold) continue;
    ChainDecomposition::Term term{mech.observations()[y], p, 0.0};
    if (const auto next = derivative(s, mech.observations()[y])) {
      term.continuation = leakage(mech, Belief(post), *next, measure).leakage;
    }
    out.total += p * term.continuation;
    out.terms.push_back(std::move(term));
  }
  return out;
}

}  // namespace qif
