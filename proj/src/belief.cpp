#include "qif/belief.hpp"

#include <cmath>
#include <sstream>

namespace qif {

bool is_distribution(std::span<const double> probs, double tol) {
  if (probs.empty()) return false;
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < -tol) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

Belief::Belief(std::vector<double> probs, double tol) : probs_(std::move(probs)) {
  if (!is_distribution(probs_, tol)) {
    std::ostringstream msg;
    msg << "belief of size " << probs_.size() << " is not a probability distribution";
    throw Error(ErrorCode::InvalidBelief, msg.str());
  }
  for (double& p : probs_) {
    if (p < 0.0) p = 0.0;
  }
}

Belief Belief::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidBelief, "empty secret set");
  return Belief(Unchecked{}, std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Belief Belief::point_mass(std::size_t n, std::size_t index) {
  if (index >= n) throw Error(ErrorCode::InvalidBelief, "point mass index out of range");
  std::vector<double> probs(n, 0.0);
  probs[index] = 1.0;
  return Belief(Unchecked{}, std::move(probs));
}

Belief Belief::uniform_on(std::size_t n, std::span<const std::size_t> support) {
  if (support.empty()) throw Error(ErrorCode::InvalidBelief, "empty support");
  std::vector<double> probs(n, 0.0);
  for (std::size_t i : support) {
    if (i >= n) throw Error(ErrorCode::InvalidBelief, "support index out of range");
    probs[i] = 1.0;
  }
  double mass = 0.0;
  for (double p : probs) mass += p;
  for (double& p : probs) p /= mass;
  return Belief(Unchecked{}, std::move(probs));
}

bool Belief::is_interior() const noexcept {
  for (double p : probs_) {
    if (!(p > 0.0)) return false;
  }
  return true;
}

bool Belief::approx_equal(const Belief& other, double tol) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::abs(probs_[i] - other.probs_[i]) > tol) return false;
  }
  return true;
}

}  // namespace qif
