#include "rk/sign_sequence.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

#include "rk/errors.hpp"

namespace rk {

namespace {

// Walks a sign sequence run by run, tracking the unread part of the current run.
struct Cursor {
  const std::vector<SignSequence::Run>& runs;
  std::size_t index = 0;
  Ordinal remaining;

  explicit Cursor(const SignSequence& s) : runs(s.runs()) {
    if (!runs.empty()) remaining = runs[0].length;
  }
  bool done() const { return index >= runs.size(); }
  Sign sign() const { return runs[index].sign; }
  void advance(const Ordinal& m) {
    remaining = ord_sub(m, remaining);
    if (remaining.is_zero() && ++index < runs.size()) remaining = runs[index].length;
  }
};

}  // namespace

SignSequence SignSequence::from_runs(std::vector<Run> runs) {
  SignSequence out;
  for (auto& r : runs) {
    if (r.length.is_zero()) continue;
    if (!out.runs_.empty() && out.runs_.back().sign == r.sign)
      out.runs_.back().length = ord_add(out.runs_.back().length, r.length);
    else
      out.runs_.push_back(std::move(r));
  }
  return out;
}

SignSequence SignSequence::constant(Sign s, const Ordinal& length) {
  return from_runs({{s, length}});
}

bool SignSequence::is_finite() const {
  for (auto& r : runs_)
    if (!r.length.is_finite()) return false;
  return true;
}

Ordinal SignSequence::length() const {
  Ordinal total;
  for (auto& r : runs_) total = ord_add(total, r.length);
  return total;
}

std::optional<Sign> SignSequence::sign_at(const Ordinal& pos) const {
  Ordinal start;
  for (auto& r : runs_) {
    Ordinal end = ord_add(start, r.length);
    if (pos < end) return r.sign;
    start = std::move(end);
  }
  return std::nullopt;
}

SignSequence SignSequence::prefix(const Ordinal& n) const {
  SignSequence out;
  Ordinal start;
  for (auto& r : runs_) {
    if (n <= start) break;
    Ordinal end = ord_add(start, r.length);
    if (n < end) {
      out.runs_.push_back({r.sign, ord_sub(start, n)});
      break;
    }
    out.runs_.push_back(r);
    start = std::move(end);
  }
  return out;
}

SignSequence SignSequence::append(Sign s, const Ordinal& count) const {
  auto runs = runs_;
  runs.push_back({s, count});
  return from_runs(std::move(runs));
}

SignSequence SignSequence::concat(const SignSequence& tail) const {
  auto runs = runs_;
  runs.insert(runs.end(), tail.runs_.begin(), tail.runs_.end());
  return from_runs(std::move(runs));
}

SignSequence SignSequence::negated() const {
  SignSequence out = *this;
  for (auto& r : out.runs_) r.sign = flip(r.sign);
  return out;
}

bool SignSequence::is_prefix_of(const SignSequence& other) const {
  return common_prefix_length(*this, other) == length();
}

std::optional<Ordinal> SignSequence::first_position(Sign s, const Ordinal& from) const {
  Ordinal start;
  for (auto& r : runs_) {
    Ordinal end = ord_add(start, r.length);
    if (r.sign == s && from < end) return std::max(start, from);
    start = std::move(end);
  }
  return std::nullopt;
}

std::string SignSequence::str() const {
  if (runs_.empty()) return "0";
  Ordinal total = length();
  if (total.is_finite() && *total.finite_value() <= 64) {
    std::string out;
    for (auto& r : runs_) out.append(*r.length.finite_value(), sign_char(r.sign));
    return out;
  }
  std::string out;
  for (auto& r : runs_) {
    out += '(';
    out += sign_char(r.sign);
    out += ")^";
    std::string len = r.length.str();
    bool bare = len.find('+') == std::string::npos && len.find('(') == std::string::npos;
    out += bare ? len : "(" + len + ")";
  }
  return out;
}

std::string SignSequence::key() const {
  std::string out;
  for (auto& r : runs_) {
    out += sign_char(r.sign);
    out += r.length.str();
    out += ';';
  }
  return out;
}

std::size_t SignSequence::hash() const {
  std::size_t h = 0x51ed270b;
  for (auto& r : runs_)
    h = (h * 1000003) ^ (r.length.hash() + (r.sign == Sign::PLUS ? 0x9e37 : 0x7f4a));
  return h;
}

SignSequence SignSequence::parse(std::string_view text) {
  auto fail = [&](const std::string& msg) {
    throw ParseError("sign sequence '" + std::string(text) + "': " + msg);
  };
  std::vector<Run> runs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (text.substr(i) == "0") return {};
  while (true) {
    skip();
    if (i >= text.size()) break;
    char c = text[i];
    if (c == '+' || c == '-') {
      runs.push_back({c == '+' ? Sign::PLUS : Sign::MINUS, Ordinal(1)});
      ++i;
      continue;
    }
    if (c != '(') fail("unexpected character");
    if (i + 3 >= text.size() || (text[i + 1] != '+' && text[i + 1] != '-') || text[i + 2] != ')' ||
        text[i + 3] != '^')
      fail("expected (+)^len or (-)^len");
    Sign s = text[i + 1] == '+' ? Sign::PLUS : Sign::MINUS;
    i += 4;
    // Run length: a parenthesized ordinal, or a bare token without '+'.
    auto read_group = [&] {
      int depth = 0;
      do {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        ++i;
      } while (i < text.size() && depth > 0);
      if (depth != 0) fail("unbalanced parentheses");
    };
    std::string_view len;
    if (i < text.size() && text[i] == '(') {
      std::size_t start = i;
      read_group();
      len = text.substr(start + 1, i - start - 2);
    } else {
      std::size_t start = i;
      while (i < text.size()) {
        char d = text[i];
        if (d == '(' && text[i - 1] == '^') {
          read_group();
        } else if (std::isalnum(static_cast<unsigned char>(d)) || d == '*' || d == '^') {
          ++i;
        } else {
          break;
        }
      }
      len = text.substr(start, i - start);
    }
    if (len.empty()) fail("missing run length");
    Ordinal n = Ordinal::parse(len);
    if (n.is_zero()) fail("run length must be positive");
    runs.push_back({s, std::move(n)});
  }
  return from_runs(std::move(runs));
}

Cmp s_cmp(const SignSequence& x, const SignSequence& y) {
  Cursor a(x), b(y);
  while (true) {
    if (a.done() && b.done()) return Cmp::EQ;
    if (a.done()) return b.sign() == Sign::PLUS ? Cmp::LT : Cmp::GT;
    if (b.done()) return a.sign() == Sign::PLUS ? Cmp::GT : Cmp::LT;
    if (a.sign() != b.sign()) return a.sign() == Sign::PLUS ? Cmp::GT : Cmp::LT;
    Ordinal m = std::min(a.remaining, b.remaining);
    a.advance(m);
    b.advance(m);
  }
}

bool s_less(const SignSequence& x, const SignSequence& y) { return s_cmp(x, y) == Cmp::LT; }

Ordinal common_prefix_length(const SignSequence& x, const SignSequence& y) {
  Cursor a(x), b(y);
  Ordinal pos;
  while (!a.done() && !b.done() && a.sign() == b.sign()) {
    Ordinal m = std::min(a.remaining, b.remaining);
    pos = ord_add(pos, m);
    a.advance(m);
    b.advance(m);
  }
  return pos;
}

namespace {

// Shortest proper-or-improper extension step: the first position at or after
// `from` carrying `s` cuts x there; without one, x is extended by flip(s).
SignSequence cut_at_first(const SignSequence& x, Sign s, const Ordinal& from) {
  if (auto p = x.first_position(s, from)) return x.prefix(*p);
  return x.append(flip(s));
}

}  // namespace

SignSequence simplest_between(const Cut& c) {
  const SignSequence* a = nullptr;
  const SignSequence* b = nullptr;
  for (auto& l : c.left)
    if (!a || s_less(*a, l)) a = &l;
  for (auto& r : c.right)
    if (!b || s_less(r, *b)) b = &r;
  if (a && b && !s_less(*a, *b))
    throw MalformedCut("left option " + a->str() + " is not below right option " + b->str());
  if (!a && !b) return {};
  if (!b) return cut_at_first(*a, Sign::MINUS, Ordinal(0));
  if (!a) return cut_at_first(*b, Sign::PLUS, Ordinal(0));
  Ordinal n = common_prefix_length(*a, *b);
  Ordinal la = a->length(), lb = b->length();
  if (n < la && n < lb) return a->prefix(n);
  if (n == la) return cut_at_first(*b, Sign::PLUS, succ(la));
  return cut_at_first(*a, Sign::MINUS, succ(lb));
}

Cut canonical_cut(const SignSequence& x) {
  Ordinal len = x.length();
  auto n = len.finite_value();
  if (!n) throw BudgetExceeded("canonical cut of transfinite " + x.str() + " has infinitely many options");
  Cut c;
  for (std::uint64_t k = 0; k < *n; ++k) {
    SignSequence p = x.prefix(Ordinal(k));
    (*x.sign_at(Ordinal(k)) == Sign::PLUS ? c.left : c.right).push_back(std::move(p));
  }
  return c;
}

std::optional<Rational> to_fraction(const SignSequence& x) {
  if (!x.is_finite()) return std::nullopt;
  Rational v = 0;
  Rational step = 1;
  bool integer_phase = true;
  const auto& runs = x.runs();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::uint64_t n = *runs[i].length.finite_value();
    int dir = runs[i].sign == Sign::PLUS ? 1 : -1;
    for (std::uint64_t k = 0; k < n; ++k) {
      if (integer_phase && i > 0) integer_phase = false;
      if (!integer_phase) step /= 2;
      v += dir * step;
    }
  }
  return v;
}

SignSequence from_dyadic(const Rational& d) {
  if (!is_dyadic(d)) throw std::invalid_argument("from_dyadic: " + rational_str(d) + " is not dyadic");
  std::vector<SignSequence::Run> runs;
  auto push = [&](Sign s) { runs.push_back({s, Ordinal(1)}); };
  // Integer steps towards d until reaching or passing it: ceil(|d|) of them.
  const Rational mag = d < 0 ? Rational(-d) : d;
  Integer steps = boost::multiprecision::numerator(mag) / boost::multiprecision::denominator(mag);
  if (steps * boost::multiprecision::denominator(mag) != boost::multiprecision::numerator(mag)) steps += 1;
  if (steps > Integer(std::numeric_limits<std::uint64_t>::max()))
    throw BudgetExceeded("from_dyadic: integer part too large");
  const Sign dir = d > 0 ? Sign::PLUS : Sign::MINUS;
  if (steps > 0) runs.push_back({dir, Ordinal(static_cast<std::uint64_t>(steps))});
  Rational v = d > 0 ? Rational(steps) : Rational(-steps);
  Rational step = 1;
  while (v != d) {
    step /= 2;
    if (v > d) {
      push(Sign::MINUS);
      v -= step;
    } else {
      push(Sign::PLUS);
      v += step;
    }
  }
  return SignSequence::from_runs(std::move(runs));
}

}  // namespace rk
