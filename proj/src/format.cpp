#include "qif/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace qif {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::optional<Fraction> as_fraction(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x) || std::fabs(x) > 1e12) return std::nullopt;
  const bool negative = x < 0.0;
  const double target = std::fabs(x);
  tol *= std::max(1.0, target);
  // Convergents h/k of the continued fraction of target.
  std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(target));
  std::int64_t k_prev = 0, k = 1;
  double rest = target - std::floor(target);
  while (std::fabs(static_cast<double>(h) / static_cast<double>(k) - target) > tol && rest > 0.0) {
    const double inv = 1.0 / rest;
    const auto a = static_cast<std::int64_t>(std::floor(inv));
    rest = inv - std::floor(inv);
    const std::int64_t h_next = a * h + h_prev;
    const std::int64_t k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
  }
  if (std::fabs(static_cast<double>(h) / static_cast<double>(k) - target) > tol) return std::nullopt;
  return Fraction{negative ? -h : h, k};
}

std::string format_exact(double x) {
  const auto f = as_fraction(x);
  if (!f) return format_number(x);
  if (f->den == 1) return std::to_string(f->num);
  return std::to_string(f->num) + "/" + std::to_string(f->den);
}

}  // namespace qif
