#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qif/mechanism.hpp"

namespace qif {

/// A propositional formula over variables z1..zu.
///
/// Grammar (loosest binding first): `<->`, `->` (right assoc.), `|`, `^`, `&`,
/// prefix `!`/`~`, atoms `zN`, `true`, `false`, `1`, `0`, parentheses.
/// The words `and`, `or`, `not`, `xor` are accepted as synonyms.
class BooleanFormula {
 public:
  /// Throws ParseError.
  static BooleanFormula parse(std::string_view text);

  /// u, the largest variable index that occurs (0 for a constant formula).
  std::size_t num_variables() const noexcept { return num_vars_; }
  const std::string& text() const noexcept { return text_; }

  /// Bit (i−1) of `assignment` is the value of z_i.
  bool evaluate(std::uint64_t assignment) const;

 private:
  enum class Op : std::uint8_t { Const, Var, Not, And, Or, Xor, Implies, Iff };
  struct Node {
    Op op;
    std::uint32_t a = 0;  // child / variable index / constant value
    std::uint32_t b = 0;
  };
  friend class FormulaParser;

  bool eval(std::uint32_t node, std::uint64_t assignment) const;

  std::string text_;
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
  std::size_t num_vars_ = 0;
};

/// Demo-scale guard on u for full materialization (2^u actions).
inline constexpr std::size_t kMaxBooleanVariables = 20;

/// Action label for an assignment: "b1b2…bu" with z1 first; "-" when u = 0.
std::string boolean_action_label(std::uint64_t assignment, std::size_t num_variables);

/// The (1,u,1)-boolean form of f(x, z) = x ∧ φ(z): secrets = observations =
/// {0,1}, one deterministic action per assignment of z, ordered with z1 as the
/// most significant bit. Throws TooManyVariables when u > 20.
Mechanism boolean_form_build(const BooleanFormula& formula);
Mechanism boolean_form_build(std::string_view formula);

/// The one-action mechanism for a single assignment, built without
/// materializing the other 2^u − 1 matrices.
Mechanism boolean_form_action(const BooleanFormula& formula, std::uint64_t assignment);

}  // namespace qif
