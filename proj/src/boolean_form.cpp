#include "qif/boolean_form.hpp"

#include <cctype>

namespace qif {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, BooleanFormula& out) : text_(text), out_(out) {}

  void run() {
    out_.root_ = parse_iff();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
  }

 private:
  using Op = BooleanFormula::Op;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    // Word operators must not swallow the prefix of an identifier.
    if (std::isalpha(static_cast<unsigned char>(token.front()))) {
      const auto end = pos_ + token.size();
      if (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) return false;
    }
    pos_ += token.size();
    return true;
  }

  std::uint32_t add(Op op, std::uint32_t a = 0, std::uint32_t b = 0) {
    out_.nodes_.push_back({op, a, b});
    return static_cast<std::uint32_t>(out_.nodes_.size() - 1);
  }

  std::uint32_t parse_iff() {
    auto lhs = parse_implies();
    while (accept("<->")) lhs = add(Op::Iff, lhs, parse_implies());
    return lhs;
  }

  std::uint32_t parse_implies() {
    auto lhs = parse_or();
    if (accept("->")) return add(Op::Implies, lhs, parse_implies());
    return lhs;
  }

  std::uint32_t parse_or() {
    auto lhs = parse_xor();
    while (accept("|") || accept("or")) lhs = add(Op::Or, lhs, parse_xor());
    return lhs;
  }

  std::uint32_t parse_xor() {
    auto lhs = parse_and();
    while (accept("^") || accept("xor")) lhs = add(Op::Xor, lhs, parse_and());
    return lhs;
  }

  std::uint32_t parse_and() {
    auto lhs = parse_unary();
    while (accept("&") || accept("and")) lhs = add(Op::And, lhs, parse_unary());
    return lhs;
  }

  std::uint32_t parse_unary() {
    if (accept("!") || accept("~") || accept("not")) return add(Op::Not, parse_unary());
    return parse_atom();
  }

  std::uint32_t parse_atom() {
    skip_space();
    if (accept("(")) {
      auto inner = parse_iff();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (accept("true") || accept("1")) return add(Op::Const, 1);
    if (accept("false") || accept("0")) return add(Op::Const, 0);
    if (pos_ < text_.size() && text_[pos_] == 'z') {
      ++pos_;
      const auto start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_ || pos_ - start > 6) fail("expected variable index after 'z'");
      const auto index = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (index == 0) fail("variables are numbered from z1");
      if (index > out_.num_vars_) out_.num_vars_ = index;
      return add(Op::Var, static_cast<std::uint32_t>(index - 1));
    }
    if (pos_ >= text_.size()) fail("unexpected end of formula");
    fail(std::string("unexpected character '") + text_[pos_] + "'");
  }

  std::string_view text_;
  BooleanFormula& out_;
  std::size_t pos_ = 0;
};

BooleanFormula BooleanFormula::parse(std::string_view text) {
  BooleanFormula f;
  f.text_ = std::string(text);
  FormulaParser(f.text_, f).run();
  return f;
}

bool BooleanFormula::evaluate(std::uint64_t assignment) const { return eval(root_, assignment); }

bool BooleanFormula::eval(std::uint32_t node, std::uint64_t assignment) const {
  const Node& n = nodes_[node];
  switch (n.op) {
    case Op::Const: return n.a != 0;
    case Op::Var: return ((assignment >> n.a) & 1U) != 0;
    case Op::Not: return !eval(n.a, assignment);
    case Op::And: return eval(n.a, assignment) && eval(n.b, assignment);
    case Op::Or: return eval(n.a, assignment) || eval(n.b, assignment);
    case Op::Xor: return eval(n.a, assignment) != eval(n.b, assignment);
    case Op::Implies: return !eval(n.a, assignment) || eval(n.b, assignment);
    case Op::Iff: return eval(n.a, assignment) == eval(n.b, assignment);
  }
  return false;
}

std::string boolean_action_label(std::uint64_t assignment, std::size_t num_variables) {
  if (num_variables == 0) return "-";
  std::string label(num_variables, '0');
  for (std::size_t i = 0; i < num_variables; ++i) {
    if ((assignment >> i) & 1U) label[i] = '1';
  }
  return label;
}

namespace {

// Action index k (z1 = most significant bit) to the assignment bitmask.
std::uint64_t assignment_of_index(std::uint64_t k, std::size_t u) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < u; ++i) {
    if ((k >> (u - 1 - i)) & 1U) bits |= std::uint64_t{1} << i;
  }
  return bits;
}

ActionMatrix action_matrix(const BooleanFormula& formula, std::uint64_t assignment) {
  const bool phi = formula.evaluate(assignment);
  // Row x=0 always yields 0; row x=1 yields φ(b).
  return {boolean_action_label(assignment, formula.num_variables()),
          {{1.0, 0.0}, phi ? std::vector<double>{0.0, 1.0} : std::vector<double>{1.0, 0.0}}};
}

}  // namespace

Mechanism boolean_form_build(const BooleanFormula& formula) {
  const auto u = formula.num_variables();
  if (u > kMaxBooleanVariables) {
    throw Error(ErrorCode::TooManyVariables,
                std::to_string(u) + " variables exceed the limit of " + std::to_string(kMaxBooleanVariables));
  }
  std::vector<ActionMatrix> actions;
  const std::uint64_t count = std::uint64_t{1} << u;
  actions.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) actions.push_back(action_matrix(formula, assignment_of_index(k, u)));
  return Mechanism({"0", "1"}, {"0", "1"}, std::move(actions));
}

Mechanism boolean_form_build(std::string_view formula) {
  return boolean_form_build(BooleanFormula::parse(formula));
}

Mechanism boolean_form_action(const BooleanFormula& formula, std::uint64_t assignment) {
  return Mechanism({"0", "1"}, {"0", "1"}, {action_matrix(formula, assignment)});
}

}  // namespace qif
