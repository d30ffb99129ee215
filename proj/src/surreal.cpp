#include "rk/surreal.hpp"

#include <algorithm>
#include <atomic>
#include <string>
#include <unordered_map>

#include "rk/errors.hpp"

namespace rk {

namespace {

std::atomic<int> g_depth{64};
std::atomic<int> g_runs{32};

thread_local std::unordered_map<std::string, SignSequence> add_memo;
thread_local std::unordered_map<std::string, SignSequence> mul_memo;
thread_local int add_depth = 0;
thread_local int mul_depth = 0;

struct DepthGuard {
  int& counter;
  DepthGuard(int& c, const char* op) : counter(c) {
    if (++counter > g_depth.load()) {
      --counter;
      throw BudgetExceeded(std::string(op) + ": recursion depth budget exceeded");
    }
  }
  ~DepthGuard() { --counter; }
};

const SignSequence& check_runs(const SignSequence& s) {
  if (static_cast<int>(s.run_count()) > g_runs.load())
    throw BudgetExceeded("result " + s.str() + " exceeds the run budget");
  return s;
}

std::string pair_key(const SignSequence& x, const SignSequence& y) {
  std::string a = x.key(), b = y.key();
  if (b < a) std::swap(a, b);  // both operations are commutative
  return a + "|" + b;
}

SignSequence add_rec(const SignSequence& x, const SignSequence& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const std::string key = pair_key(x, y);
  if (auto it = add_memo.find(key); it != add_memo.end()) return it->second;
  DepthGuard guard(add_depth, "s_add");
  const Cut cx = canonical_cut(x), cy = canonical_cut(y);
  Cut c;
  for (auto& l : cx.left) c.left.push_back(add_rec(l, y));
  for (auto& l : cy.left) c.left.push_back(add_rec(x, l));
  for (auto& r : cx.right) c.right.push_back(add_rec(r, y));
  for (auto& r : cy.right) c.right.push_back(add_rec(x, r));
  SignSequence result = check_runs(simplest_between(c));
  add_memo.emplace(key, result);
  return result;
}

SignSequence mul_rec(const SignSequence& x, const SignSequence& y) {
  if (x.is_zero() || y.is_zero()) return {};
  const std::string key = pair_key(x, y);
  if (auto it = mul_memo.find(key); it != mul_memo.end()) return it->second;
  DepthGuard guard(mul_depth, "s_mul");
  const Cut cx = canonical_cut(x), cy = canonical_cut(y);
  // a*y + x*b - a*b for options a of x and b of y.
  auto option = [&](const SignSequence& a, const SignSequence& b) {
    return add_rec(add_rec(mul_rec(a, y), mul_rec(x, b)), mul_rec(a, b).negated());
  };
  Cut c;
  for (auto& a : cx.left)
    for (auto& b : cy.left) c.left.push_back(option(a, b));
  for (auto& a : cx.right)
    for (auto& b : cy.right) c.left.push_back(option(a, b));
  for (auto& a : cx.left)
    for (auto& b : cy.right) c.right.push_back(option(a, b));
  for (auto& a : cx.right)
    for (auto& b : cy.left) c.right.push_back(option(a, b));
  SignSequence result = check_runs(simplest_between(c));
  mul_memo.emplace(key, result);
  return result;
}

}  // namespace

SurrealBudget surreal_budget() { return {g_depth.load(), g_runs.load()}; }

void set_surreal_budget(const SurrealBudget& b) {
  g_depth.store(b.depth);
  g_runs.store(b.runs);
  // Memoized results stay valid under any budget; failures are never cached.
}

void clear_surreal_memo() {
  add_memo.clear();
  mul_memo.clear();
}

SignSequence s_add(const SignSequence& x, const SignSequence& y) {
  if (x.is_finite() && y.is_finite()) return add_rec(x, y);
  SignSequence r = (OmegaPoly::from_sign_sequence(x) + OmegaPoly::from_sign_sequence(y)).to_sign_sequence();
  return check_runs(r);
}

SignSequence s_neg(const SignSequence& x) { return x.negated(); }

SignSequence s_sub(const SignSequence& x, const SignSequence& y) { return s_add(x, s_neg(y)); }

SignSequence s_mul(const SignSequence& x, const SignSequence& y) {
  if (x.is_finite() && y.is_finite()) return mul_rec(x, y);
  SignSequence r = (OmegaPoly::from_sign_sequence(x) * OmegaPoly::from_sign_sequence(y)).to_sign_sequence();
  return check_runs(r);
}

SignSequence s_neg_by_cut(const SignSequence& x) {
  const Cut cx = canonical_cut(x);
  Cut c;
  for (auto& r : cx.right) c.left.push_back(s_neg_by_cut(r));
  for (auto& l : cx.left) c.right.push_back(s_neg_by_cut(l));
  return simplest_between(c);
}

std::optional<SignSequence> InverseApproximant::sequence() const {
  if (!is_dyadic(value)) return std::nullopt;
  return from_dyadic(value);
}

InverseApproximants::InverseApproximants(const SignSequence& z, std::size_t max_word_length)
    : max_len_(max_word_length) {
  if (!s_less(SignSequence(), z)) throw NonPositive("inverse of non-positive " + z.str());
  auto v = to_fraction(z);
  if (!v) throw BudgetExceeded("inverse approximants of transfinite " + z.str());
  z_ = *v;
  const Cut c = canonical_cut(z);
  std::vector<std::pair<Rational, bool>> opts;
  for (auto& l : c.left)
    if (!l.is_zero()) opts.push_back({*to_fraction(l), true});
  for (auto& r : c.right) opts.push_back({*to_fraction(r), false});
  std::sort(opts.begin(), opts.end());
  for (auto& [q, left] : opts) {
    options_.push_back(q);
    option_is_left_.push_back(left);
  }
  level_.push_back({{}, Rational(0), 0});
}

std::optional<InverseApproximant> InverseApproximants::next() {
  constexpr std::size_t kMaxFrontier = std::size_t{1} << 16;
  if (pos_ == level_.size()) {
    if (options_.empty()) return std::nullopt;
    if (length_ + 1 > max_len_) throw BudgetExceeded("inverse approximants: word-length budget spent");
    if (level_.size() * options_.size() > kMaxFrontier)
      throw BudgetExceeded("inverse approximants: frontier budget spent");
    std::vector<Node> next_level;
    for (auto& n : level_)
      for (std::size_t i = 0; i < options_.size(); ++i) {
        const Rational& o = options_[i];
        Node m{n.word, (1 - (z_ - o) * n.value) / o, n.lefts + (option_is_left_[i] ? 1 : 0)};
        m.word.push_back(i);
        next_level.push_back(std::move(m));
      }
    level_ = std::move(next_level);
    pos_ = 0;
    ++length_;
  }
  const Node& n = level_[pos_++];
  InverseApproximant a;
  for (std::size_t i : n.word) a.word.push_back(options_[i]);
  a.value = n.value;
  a.side = n.lefts % 2 == 0 ? Side::LOW : Side::HIGH;
  return a;
}

InverseApproximants s_inv_approx(const SignSequence& z, std::size_t max_word_length) {
  return InverseApproximants(z, max_word_length);
}

}  // namespace rk
