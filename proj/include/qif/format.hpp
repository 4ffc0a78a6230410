#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qif {

/// x rounded to 12 significant digits.
double round12(double x);

/// "%.12g" rendering of x.
std::string format_number(double x);

struct Fraction {
  std::int64_t num;
  std::int64_t den;
};

/// Best continued-fraction approximation with denominator ≤ max_den, if it
/// lies within tol·max(1, |x|) of x.
std::optional<Fraction> as_fraction(double x, std::int64_t max_den = 1'000'000, double tol = 1e-13);

/// "n/d", "n" for integers, or format_number(x) when no fraction fits.
std::string format_exact(double x);

}  // namespace qif
