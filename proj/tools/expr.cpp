#include "expr.hpp"

#include <cctype>

#include "rk/errors.hpp"
#include "rk/krational.hpp"
#include "rk/ordinal.hpp"
#include "rk/rational.hpp"
#include "rk/surreal.hpp"

namespace rk::cli {
namespace {

std::string with_omega(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == 'w')
      out += "ω";
    else
      out += c;
  }
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  SignSequence parse() {
    SignSequence v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("eval: " + why + " at column " + std::to_string(i_ + 1) + " of '" + s_ + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at(char c) const { return i_ < s_.size() && s_[i_] == c; }
  bool digit_at(std::size_t k) const { return k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k])); }
  bool run_group_at(std::size_t k) const {
    return k + 3 < s_.size() && s_[k] == '(' && (s_[k + 1] == '+' || s_[k + 1] == '-') && s_[k + 2] == ')' &&
           s_[k + 3] == '^';
  }

  // Applies op, naming the sub-expression [from, i_) if the arithmetic fails.
  template <class F>
  SignSequence guarded(std::size_t from, F op) {
    try {
      return op();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      const std::string msg = e.what();
      if (msg.rfind("in '", 0) == 0) throw;
      const std::string sub = s_.substr(from, i_ - from);
      const std::string what = "in '" + sub + "': " + msg;
      if (dynamic_cast<const BudgetExceeded*>(&e)) throw BudgetExceeded(what);
      throw Error(what);
    }
  }

  SignSequence expr() {
    skip();
    const std::size_t from = i_;
    SignSequence v = term();
    for (;;) {
      skip();
      if (!at('+') && !at('-')) return v;
      const char op = s_[i_++];
      SignSequence rhs = term();
      v = guarded(from, [&] { return op == '+' ? s_add(v, rhs) : s_sub(v, rhs); });
    }
  }

  SignSequence term() {
    skip();
    const std::size_t from = i_;
    SignSequence v = unary();
    for (;;) {
      skip();
      if (!at('*')) return v;
      ++i_;
      SignSequence rhs = unary();
      v = guarded(from, [&] { return s_mul(v, rhs); });
    }
  }

  // End of the sign literal starting at i_ (i_ itself if there is none).
  std::size_t sign_literal_end() const {
    std::size_t k = i_;
    for (;;) {
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) {
        ++k;
      } else if (run_group_at(k)) {
        k += 4;
        k = exponent_end(k);
      } else {
        return k;
      }
    }
  }

  std::size_t exponent_end(std::size_t k) const {
    for (;;) {
      if (k < s_.size() && s_[k] == '(') {
        int depth = 0;
        do {
          if (s_[k] == '(') ++depth;
          if (s_[k] == ')') --depth;
          ++k;
        } while (k < s_.size() && depth > 0);
      } else {
        while (k < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[k])) || s_[k] == 'w')) ++k;
      }
      if (k < s_.size() && s_[k] == '^')
        ++k;
      else
        return k;
    }
  }

  SignSequence unary() {
    skip();
    const std::size_t from = i_;
    const std::size_t end = sign_literal_end();
    if (end > i_) {
      const bool operand_follows =
          end < s_.size() && (digit_at(end) || s_[end] == 'w' || s_[end] == '.' || s_[end] == '(');
      if (!operand_follows) {
        const std::string lit = s_.substr(i_, end - i_);
        i_ = end;
        return SignSequence::parse(lit);
      }
    }
    if (at('-')) {
      ++i_;
      SignSequence v = unary();
      return guarded(from, [&] { return s_neg(v); });
    }
    if (at('+')) {
      ++i_;
      return unary();
    }
    return primary();
  }

  SignSequence primary() {
    skip();
    if (i_ == s_.size()) fail("missing operand");
    if (at('(')) {
      ++i_;
      SignSequence v = expr();
      skip();
      if (!at(')')) fail("expected ')'");
      ++i_;
      return v;
    }
    if (at('w')) {
      const std::size_t from = i_;
      ++i_;
      if (at('^')) i_ = exponent_end(i_ + 1);
      return SignSequence::ordinal(Ordinal::parse(s_.substr(from, i_ - from)));
    }
    if (digit_at(i_) || at('.')) {
      const std::size_t from = i_;
      while (digit_at(i_) || at('.')) ++i_;
      if (at('/') && digit_at(i_ + 1)) {
        ++i_;
        while (digit_at(i_)) ++i_;
      }
      const std::string lit = s_.substr(from, i_ - from);
      const Rational q = parse_rational(lit);
      if (!is_dyadic(q)) fail("'" + lit + "' is not dyadic, so it has no finite sign sequence");
      return from_dyadic(q);
    }
    fail("unexpected '" + std::string(1, s_[i_]) + "'");
  }
};

}  // namespace

SignSequence evaluate(const std::string& text) { return Parser(text).parse(); }

std::string describe_value(const SignSequence& x) {
  if (auto q = to_fraction(x)) return rational_str(*q);
  const auto& runs = x.runs();
  if (runs.size() == 1) {
    const std::string a = with_omega(runs[0].length.str());
    return runs[0].sign == Sign::PLUS ? a : "-" + a;
  }
  try {
    return with_omega(KRational::from_sign_sequence(x).str());
  } catch (const Error&) {
    return {};
  }
}

std::string show_sequence(const SignSequence& x) { return x.is_zero() ? "⟨⟩" : x.str(); }

}  // namespace rk::cli
