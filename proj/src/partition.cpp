#include "qif/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qif {

Partition::Partition(std::vector<std::vector<std::size_t>> classes) : classes_(std::move(classes)) {
  std::size_t n = 0;
  for (auto& c : classes_) {
    if (c.empty()) throw Error(ErrorCode::InvalidArgument, "partition class is empty");
    std::sort(c.begin(), c.end());
    n += c.size();
  }
  std::sort(classes_.begin(), classes_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  class_of_.assign(n, n);
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    for (std::size_t x : classes_[k]) {
      if (x >= n || class_of_[x] != n) {
        throw Error(ErrorCode::InvalidArgument, "partition classes must be disjoint and cover 0..n-1");
      }
      class_of_[x] = k;
    }
  }
}

bool Partition::refines(const Partition& coarser) const {
  if (class_of_.size() != coarser.class_of_.size()) return false;
  for (const auto& c : classes_) {
    const auto target = coarser.class_of(c.front());
    for (std::size_t x : c) {
      if (coarser.class_of(x) != target) return false;
    }
  }
  return true;
}

namespace {

// Concatenated rows over the chosen actions, the secret's signature under ≡.
std::vector<double> signature(const Mechanism& mech, std::span<const std::size_t> actions, std::size_t x) {
  std::vector<double> sig;
  sig.reserve(actions.size() * mech.num_observations());
  for (std::size_t a : actions) {
    const auto r = mech.row(a, x);
    sig.insert(sig.end(), r.begin(), r.end());
  }
  return sig;
}

bool close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

}  // namespace

Partition indistinguishability_classes(const Mechanism& mech, std::span<const std::size_t> actions,
                                       double tol) {
  const std::size_t n = mech.num_secrets();
  std::vector<std::vector<double>> sigs;
  sigs.reserve(n);
  for (std::size_t x = 0; x < n; ++x) sigs.push_back(signature(mech, actions, x));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigs[a] < sigs[b]; });

  // Sorted signatures place tolerance-equal rows next to each other; each run
  // is grouped against its first member.
  std::vector<std::vector<std::size_t>> classes;
  std::size_t leader = n;
  for (std::size_t x : order) {
    if (leader != n && close(sigs[leader], sigs[x], tol)) {
      classes.back().push_back(x);
    } else {
      classes.push_back({x});
      leader = x;
    }
  }
  return Partition(std::move(classes));
}

Partition indistinguishability_classes(const Mechanism& mech, double tol) {
  std::vector<std::size_t> all(mech.num_actions());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return indistinguishability_classes(mech, all, tol);
}

}  // namespace qif
