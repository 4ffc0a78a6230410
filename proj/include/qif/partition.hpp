#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qif/mechanism.hpp"

namespace qif {

/// A partition of the secret indices. Classes are sorted by smallest member,
/// members ascending within each class.
class Partition {
 public:
  explicit Partition(std::vector<std::vector<std::size_t>> classes);

  std::size_t size() const noexcept { return classes_.size(); }
  const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }
  std::size_t class_of(std::size_t secret) const { return class_of_.at(secret); }

  /// Every class of *this is contained in some class of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
};

/// Secrets are indistinguishable iff their rows coincide (component-wise
/// within `tol`) in every action matrix.
Partition indistinguishability_classes(const Mechanism& mech, double tol = kTolerance);

/// Same relation restricted to a subset of the actions.
Partition indistinguishability_classes(const Mechanism& mech, std::span<const std::size_t> actions,
                                       double tol = kTolerance);

}  // namespace qif
