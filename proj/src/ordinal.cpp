#include "rk/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "rk/errors.hpp"

namespace rk {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw BudgetExceeded("ordinal coefficient overflow");
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw BudgetExceeded("ordinal coefficient overflow");
  return out;
}

using Term = Ordinal::Term;

// Sorts by exponent (descending) and merges equal exponents by summing
// coefficients. This is the Hessenberg normal form of a multiset of terms.
Ordinal collect(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.exponent > y.exponent; });
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (t.coefficient == 0) continue;
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coefficient = checked_add(merged.back().coefficient, t.coefficient);
    } else {
      merged.push_back(std::move(t));
    }
  }
  return Ordinal::from_terms(std::move(merged));
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Ordinal parse_all() {
    Ordinal r = sum();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  Ordinal sum() {
    std::vector<Term> terms;
    terms.push_back(term());
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '+') {
        ++pos_;
        terms.push_back(term());
      } else {
        break;
      }
    }
    // Terms must already be in canonical order; zero summands are tolerated.
    std::vector<Term> kept;
    for (auto& t : terms)
      if (t.coefficient != 0) kept.push_back(std::move(t));
    for (std::size_t i = 1; i < kept.size(); ++i)
      if (!(kept[i - 1].exponent > kept[i].exponent))
        fail("exponents must be strictly decreasing");
    return Ordinal::from_terms(std::move(kept));
  }

  Term term() {
    skip_ws();
    if (pos_ < s_.size() && (s_[pos_] == 'w' || s_[pos_] == 'W')) {
      ++pos_;
      Ordinal exponent(1);
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        exponent = atom();
      }
      std::uint64_t coeff = 1;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        coeff = natural();
      }
      return Term{std::move(exponent), coeff};
    }
    return Term{Ordinal(), natural()};
  }

  Ordinal atom() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      Ordinal r = sum();
      skip_ws();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'w' || s_[pos_] == 'W')) {
      ++pos_;
      return Ordinal::omega();
    }
    return Ordinal(natural());
  }

  std::uint64_t natural() {
    skip_ws();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc() || ptr == s_.data() + pos_) fail("expected natural number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("ordinal '" + std::string(s_) + "': " + msg + " at offset " +
                     std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal::Ordinal(std::uint64_t n) {
  if (n != 0) terms_.push_back(Term{Ordinal(), n});
}

Ordinal Ordinal::omega() { return omega_power(Ordinal(1)); }

Ordinal Ordinal::omega_power(const Ordinal& exponent, std::uint64_t coefficient) {
  Ordinal r;
  if (coefficient != 0) r.terms_.push_back(Term{exponent, coefficient});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw ParseError("CNF coefficient must be positive");
    if (i > 0 && !(terms[i - 1].exponent > terms[i].exponent))
      throw ParseError("CNF exponents must be strictly decreasing");
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

Ordinal Ordinal::parse(std::string_view text) { return Parser(text).parse_all(); }

bool Ordinal::is_finite() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero()); }

bool Ordinal::is_limit() const { return !terms_.empty() && !terms_.back().exponent.is_zero(); }

std::optional<std::uint64_t> Ordinal::finite_value() const {
  if (terms_.empty()) return 0;
  if (is_finite()) return terms_[0].coefficient;
  return std::nullopt;
}

std::uint64_t Ordinal::finite_part() const {
  if (!terms_.empty() && terms_.back().exponent.is_zero()) return terms_.back().coefficient;
  return 0;
}

Ordinal Ordinal::limit_part() const {
  Ordinal r = *this;
  if (!r.terms_.empty() && r.terms_.back().exponent.is_zero()) r.terms_.pop_back();
  return r;
}

Ordinal Ordinal::leading_exponent() const { return terms_.empty() ? Ordinal() : terms_.front().exponent; }

Ordinal Ordinal::trailing_exponent() const { return terms_.empty() ? Ordinal() : terms_.back().exponent; }

std::string Ordinal::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += '+';
    const auto& t = terms_[i];
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent != Ordinal(1)) {
      std::string e = t.exponent.str();
      bool simple = e.find_first_of("+*^") == std::string::npos;
      out += '^';
      out += simple ? e : "(" + e + ")";
    }
    if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

std::size_t Ordinal::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& t : terms_) {
    h ^= t.exponent.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint64_t>{}(t.coefficient) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (auto c = x.exponent <=> y.exponent; c != 0) return c;
    if (auto c = x.coefficient <=> y.coefficient; c != 0) return c;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::strong_ordering cmp(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const Ordinal& lead = b.terms().front().exponent;
  std::vector<Term> out;
  std::uint64_t carry = 0;
  for (const auto& t : a.terms()) {
    if (t.exponent > lead) {
      out.push_back(t);
    } else {
      if (t.exponent == lead) carry = t.coefficient;
      break;
    }
  }
  for (std::size_t i = 0; i < b.terms().size(); ++i) {
    Term t = b.terms()[i];
    if (i == 0) t.coefficient = checked_add(t.coefficient, carry);
    out.push_back(std::move(t));
  }
  return Ordinal::from_terms(std::move(out));
}

Ordinal ord_mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  const Ordinal lead = a.leading_exponent();
  std::vector<Term> out;
  for (const auto& t : b.terms()) {
    if (!t.exponent.is_zero()) {
      out.push_back(Term{ord_add(lead, t.exponent), t.coefficient});
    } else {
      for (std::size_t i = 0; i < a.terms().size(); ++i) {
        Term s = a.terms()[i];
        if (i == 0) s.coefficient = checked_mul(s.coefficient, t.coefficient);
        out.push_back(std::move(s));
      }
    }
  }
  return Ordinal::from_terms(std::move(out));
}

Ordinal ord_sub(const Ordinal& a, const Ordinal& b) {
  if (a > b) throw std::invalid_argument("ord_sub: " + a.str() + " exceeds " + b.str());
  const auto& at = a.terms();
  const auto& bt = b.terms();
  std::size_t i = 0;
  while (i < at.size() && i < bt.size() && at[i] == bt[i]) ++i;
  std::vector<Term> out;
  if (i < at.size() && at[i].exponent == bt[i].exponent) {
    out.push_back(Term{bt[i].exponent, bt[i].coefficient - at[i].coefficient});
    ++i;
  }
  for (; i < bt.size(); ++i) out.push_back(bt[i]);
  return Ordinal::from_terms(std::move(out));
}

Ordinal succ(const Ordinal& a) { return ord_add(a, Ordinal(1)); }

Ordinal pred(const Ordinal& a) {
  if (!a.is_successor()) throw std::invalid_argument("pred of non-successor " + a.str());
  auto terms = a.terms();
  if (--terms.back().coefficient == 0) terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

Ordinal nat_add(const Ordinal& a, const Ordinal& b) {
  std::vector<Term> all = a.terms();
  all.insert(all.end(), b.terms().begin(), b.terms().end());
  return collect(std::move(all));
}

Ordinal nat_mul(const Ordinal& a, const Ordinal& b) {
  std::vector<Term> all;
  for (const auto& s : a.terms())
    for (const auto& t : b.terms())
      all.push_back(Term{nat_add(s.exponent, t.exponent), checked_mul(s.coefficient, t.coefficient)});
  return collect(std::move(all));
}

FiniteDivision div_finite(const Ordinal& a, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("div_finite by zero");
  // k*lambda = lambda for a limit lambda, so only the finite part is divided.
  const std::uint64_t n = a.finite_part();
  return {ord_add(a.limit_part(), Ordinal(n / k)), n % k};
}

Parity parity(const Ordinal& a) {
  const std::uint64_t n = a.finite_part();
  return {a.limit_part(), n, n % 2 == 0};
}

bool is_even(const Ordinal& a) { return a.finite_part() % 2 == 0; }

Ordinal nth_even(const Ordinal& a) {
  return ord_add(a.limit_part(), Ordinal(checked_mul(a.finite_part(), 2)));
}

Ordinal even_index(const Ordinal& even) {
  if (!is_even(even)) throw std::invalid_argument("even_index of odd ordinal " + even.str());
  return div_finite(even, 2).quotient;
}

Ordinal godel_block_start(const Ordinal& mu) {
  if (auto n = mu.finite_value()) return Ordinal(checked_mul(*n, *n));
  const Ordinal lambda = mu.limit_part();
  const std::uint64_t n = mu.finite_part();
  if (n > 0) {
    // Each block below lambda+n contributes lambda*2 + (k+1); finite tails are
    // absorbed by the next block.
    return ord_add(godel_block_start(lambda),
                   ord_add(ord_mul(lambda, Ordinal(checked_mul(2, n))), Ordinal(n)));
  }
  // mu is a limit: mu = rho + w^gamma.
  auto terms = mu.terms();
  const Ordinal gamma = terms.back().exponent;
  if (--terms.back().coefficient == 0) terms.pop_back();
  const Ordinal rho = Ordinal::from_terms(std::move(terms));
  if (!rho.is_zero())
    return ord_add(godel_block_start(rho), ord_mul(rho, Ordinal::omega_power(gamma)));
  // mu = w^gamma
  if (gamma.is_successor())
    return Ordinal::omega_power(succ(ord_mul(pred(gamma), Ordinal(2))));
  auto gterms = gamma.terms();
  const Ordinal eta = gterms.back().exponent;
  if (--gterms.back().coefficient == 0) gterms.pop_back();
  const Ordinal gamma_rest = Ordinal::from_terms(std::move(gterms));
  const Ordinal tail = Ordinal::omega_power(eta);
  const Ordinal exponent =
      gamma_rest.is_zero() ? tail : ord_add(ord_mul(gamma_rest, Ordinal(2)), tail);
  return Ordinal::omega_power(exponent);
}

Ordinal godel_pair(const Ordinal& a, const Ordinal& b) {
  const Ordinal& mu = std::max(a, b);
  const Ordinal base = godel_block_start(mu);
  if (a < mu) return ord_add(base, a);
  return ord_add(base, ord_add(mu, b));
}

std::pair<Ordinal, Ordinal> godel_unpair(const Ordinal& c) {
  const Ordinal mu =
      greatest_satisfying([&](const Ordinal& m) { return godel_block_start(m) <= c; }, c);
  const Ordinal r = ord_sub(godel_block_start(mu), c);
  if (r < mu) return {r, mu};
  return {mu, ord_sub(mu, r)};
}

Ordinal greatest_satisfying(const std::function<bool(const Ordinal&)>& holds, const Ordinal& upper) {
  Ordinal x;
  while (true) {
    auto extended = [&](const Ordinal& e, std::uint64_t k) {
      return ord_add(x, Ordinal::omega_power(e, k));
    };
    auto fits = [&](const Ordinal& candidate) { return candidate <= upper && holds(candidate); };
    if (!fits(extended(Ordinal(), 1))) return x;
    // The set of admissible exponents is downward closed and bounded by the
    // leading exponent of the upper bound.
    const Ordinal e = greatest_satisfying(
        [&](const Ordinal& exp) { return fits(extended(exp, 1)); }, upper.leading_exponent());
    std::uint64_t lo = 1, hi = 2;
    while (fits(extended(e, hi))) {
      lo = hi;
      if (hi > (std::uint64_t{1} << 62)) throw BudgetExceeded("coefficient search overflow");
      hi *= 2;
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      (fits(extended(e, mid)) ? lo : hi) = mid;
    }
    x = extended(e, lo);
  }
}

}  // namespace rk
