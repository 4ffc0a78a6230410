#include "qif/strategy.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace qif {

Strategy::Strategy(std::string action)
    : node_(std::make_shared<const Node>(Node{std::move(action), {}, std::nullopt})) {}

Strategy::Strategy(std::string action, std::vector<Branch> branches, std::optional<Strategy> otherwise) {
  std::set<std::string_view> seen;
  for (const auto& b : branches) {
    if (!seen.insert(b.first).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate branch for observation '" + b.first + "'");
    }
  }
  node_ = std::make_shared<const Node>(Node{std::move(action), std::move(branches), std::move(otherwise)});
}

Strategy Strategy::from_list(const std::vector<std::string>& actions) {
  if (actions.empty()) throw Error(ErrorCode::InvalidArgument, "a strategy needs at least one action");
  Strategy s(actions.back());
  for (auto it = actions.rbegin() + 1; it != actions.rend(); ++it) s = Strategy(*it, {}, std::move(s));
  return s;
}

const std::string& Strategy::action() const noexcept { return node_->action; }
const std::vector<Strategy::Branch>& Strategy::branches() const noexcept { return node_->branches; }
const std::optional<Strategy>& Strategy::otherwise() const noexcept { return node_->otherwise; }

const Strategy* Strategy::child(std::string_view obs) const {
  for (const auto& [label, sub] : node_->branches) {
    if (label == obs) return &sub;
  }
  return node_->otherwise ? &*node_->otherwise : nullptr;
}

std::size_t Strategy::length() const {
  std::size_t deepest = 0;
  for (const auto& b : node_->branches) deepest = std::max(deepest, b.second.length());
  if (node_->otherwise) deepest = std::max(deepest, node_->otherwise->length());
  return 1 + deepest;
}

std::size_t Strategy::node_count() const {
  std::size_t n = 1;
  for (const auto& b : node_->branches) n += b.second.node_count();
  if (node_->otherwise) n += node_->otherwise->node_count();
  return n;
}

std::vector<std::string> Strategy::range() const {
  std::vector<std::string> out;
  std::deque<const Strategy*> queue{this};
  while (!queue.empty()) {
    const Strategy* s = queue.front();
    queue.pop_front();
    if (std::find(out.begin(), out.end(), s->action()) == out.end()) out.push_back(s->action());
    for (const auto& b : s->branches()) queue.push_back(&b.second);
    if (s->otherwise()) queue.push_back(&*s->otherwise());
  }
  return out;
}

std::optional<std::vector<std::string>> Strategy::as_list() const {
  std::vector<std::string> out;
  const Strategy* s = this;
  while (s) {
    if (!s->branches().empty()) return std::nullopt;
    out.push_back(s->action());
    s = s->otherwise() ? &*s->otherwise() : nullptr;
  }
  return out;
}

bool operator==(const Strategy& a, const Strategy& b) {
  if (a.node_ == b.node_) return true;
  return a.action() == b.action() && a.branches() == b.branches() && a.otherwise() == b.otherwise();
}

Strategy truncate(const Strategy& s, std::size_t n) {
  if (n == 0) return Strategy(s.action());
  std::vector<Strategy::Branch> branches;
  branches.reserve(s.branches().size());
  for (const auto& [label, sub] : s.branches()) branches.emplace_back(label, truncate(sub, n - 1));
  std::optional<Strategy> otherwise;
  if (s.otherwise()) otherwise = truncate(*s.otherwise(), n - 1);
  return Strategy(s.action(), std::move(branches), std::move(otherwise));
}

std::optional<Strategy> derivative(const Strategy& s, std::string_view obs) {
  const Strategy* c = s.child(obs);
  if (!c) return std::nullopt;
  return *c;
}

namespace {

// Collects the action at each depth; fails on disagreement or a missing branch.
bool collect_levels(const Strategy& s, const Mechanism& mech, std::size_t depth, std::size_t length,
                    std::vector<std::string>& levels) {
  if (levels.size() <= depth) levels.resize(depth + 1);
  if (levels[depth].empty()) {
    levels[depth] = s.action();
  } else if (levels[depth] != s.action()) {
    return false;
  }
  if (depth + 1 == length) {
    return s.branches().empty() && !s.otherwise();
  }
  for (const auto& y : mech.observations()) {
    const Strategy* c = s.child(y);
    if (!c || !collect_levels(*c, mech, depth + 1, length, levels)) return false;
  }
  return true;
}

}  // namespace

bool is_nonadaptive(const Strategy& s, const Mechanism& mech) {
  if (s.as_list()) return true;
  std::vector<std::string> levels;
  return collect_levels(s, mech, 0, s.length(), levels);
}

std::vector<std::string> nonadaptive_actions(const Strategy& s, const Mechanism& mech) {
  if (auto list = s.as_list()) return *list;
  std::vector<std::string> levels;
  if (!collect_levels(s, mech, 0, s.length(), levels)) {
    throw Error(ErrorCode::NotNonAdaptive, "strategy depends on past observations");
  }
  return levels;
}

Strategy expand_nonadaptive(const Strategy& s) {
  const auto range = s.range();
  const auto l = s.length();
  std::vector<std::string> list;
  list.reserve(range.size() * l);
  for (std::size_t i = 0; i < l; ++i) list.insert(list.end(), range.begin(), range.end());
  return Strategy::from_list(list);
}

Strategy dedupe_for_deterministic(const Strategy& s, const Mechanism& mech) {
  if (!is_deterministic(mech)) throw Error(ErrorCode::NotDeterministic, "mechanism is not deterministic");
  const auto list = nonadaptive_actions(s, mech);
  std::vector<std::string> distinct;
  for (const auto& a : list) {
    if (std::find(distinct.begin(), distinct.end(), a) == distinct.end()) distinct.push_back(a);
  }
  return Strategy::from_list(distinct);
}

Strategy all_actions_pass(const Mechanism& mech) { return Strategy::from_list(mech.actions()); }

Strategy lockstep(const Mechanism& mech, std::size_t length) {
  std::vector<std::string> list;
  list.reserve(length);
  for (std::size_t j = 0; j < length; ++j) list.push_back(mech.actions()[j % mech.num_actions()]);
  return Strategy::from_list(list);
}

}  // namespace qif
