#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qif/error.hpp"

namespace qif {

/// A probability distribution over the secret set, indexed by the owning
/// mechanism's secret order. Always valid once constructed.
class Belief {
 public:
  /// Throws InvalidBelief unless every entry is >= 0 and the entries sum to 1
  /// within `tol`. Entries within `tol` below zero are clamped to zero.
  explicit Belief(std::vector<double> probs, double tol = kTolerance);

  static Belief uniform(std::size_t n);
  static Belief point_mass(std::size_t n, std::size_t index);
  /// Uniform over the given secret indices.
  static Belief uniform_on(std::size_t n, std::span<const std::size_t> support);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<double>& vector() const noexcept { return probs_; }

  bool is_interior() const noexcept;
  bool approx_equal(const Belief& other, double tol = kTolerance) const;

 private:
  struct Unchecked {};
  Belief(Unchecked, std::vector<double> probs) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

/// True iff `probs` is a probability vector within `tol`.
bool is_distribution(std::span<const double> probs, double tol = kTolerance);

}  // namespace qif
