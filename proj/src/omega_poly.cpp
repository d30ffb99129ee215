#include "rk/omega_poly.hpp"

#include <algorithm>
#include <map>

#include "rk/errors.hpp"

namespace rk {

namespace bmp = boost::multiprecision;

OmegaPoly::OmegaPoly(const Rational& q) {
  if (q != 0) terms_.push_back({Ordinal(0), q});
}

OmegaPoly OmegaPoly::from_ordinal(const Ordinal& a) {
  OmegaPoly p;
  for (auto& t : a.terms()) p.terms_.push_back({t.exponent, Rational(t.coefficient)});
  return p;
}

void OmegaPoly::normalize() {
  std::map<Ordinal, Rational, std::greater<>> acc;
  for (auto& [e, c] : terms_) acc[e] += c;
  terms_.clear();
  for (auto& [e, c] : acc)
    if (c != 0) terms_.push_back({e, c});
}

int OmegaPoly::sign() const {
  if (terms_.empty()) return 0;
  return terms_.front().second > 0 ? 1 : -1;
}

bool OmegaPoly::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_zero());
}

Rational OmegaPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_zero()) return terms_.back().second;
  return 0;
}

OmegaPoly operator+(const OmegaPoly& a, const OmegaPoly& b) {
  OmegaPoly r = a;
  r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
  r.normalize();
  return r;
}

OmegaPoly operator-(const OmegaPoly& a) {
  OmegaPoly r = a;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

OmegaPoly operator-(const OmegaPoly& a, const OmegaPoly& b) { return a + (-b); }

OmegaPoly operator*(const OmegaPoly& a, const OmegaPoly& b) {
  OmegaPoly r;
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) r.terms_.push_back({nat_add(ea, eb), ca * cb});
  r.normalize();
  return r;
}

std::strong_ordering operator<=>(const OmegaPoly& a, const OmegaPoly& b) {
  int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less
               : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

OmegaPoly OmegaPoly::from_sign_sequence(const SignSequence& x) {
  if (x.is_zero()) return {};
  const auto& runs = x.runs();
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (!runs[i].length.is_finite())
      throw BudgetExceeded("sign sequence " + x.str() + " is outside the exact fragment");
  const Sign s = runs[0].sign;
  const Ordinal lambda = runs[0].length.limit_part();
  // x = s^lambda followed by a finite tail t, whose value is s*lambda + value(t).
  std::vector<SignSequence::Run> tail(runs.begin(), runs.end());
  tail[0].length = Ordinal(runs[0].length.finite_part());
  Rational d = *to_fraction(SignSequence::from_runs(std::move(tail)));
  OmegaPoly l = from_ordinal(lambda);
  return (s == Sign::PLUS ? l : -l) + OmegaPoly(d);
}

SignSequence OmegaPoly::to_sign_sequence() const {
  auto outside = [&] { return BudgetExceeded("value " + str() + " is outside the exact fragment"); };
  const Rational d = constant_term();
  if (!is_dyadic(d)) throw outside();
  std::vector<Ordinal::Term> lambda;
  int s = 0;
  for (auto& [e, c] : terms_) {
    if (e.is_zero()) break;
    if (bmp::denominator(c) != 1) throw outside();
    int cs = c > 0 ? 1 : -1;
    if (s != 0 && cs != s) throw outside();
    s = cs;
    Integer mag = abs(bmp::numerator(c));
    if (mag > Integer(std::numeric_limits<std::uint64_t>::max())) throw outside();
    lambda.push_back({e, static_cast<std::uint64_t>(mag)});
  }
  SignSequence tail = from_dyadic(d);
  if (lambda.empty()) return tail;
  Sign sign = s > 0 ? Sign::PLUS : Sign::MINUS;
  return SignSequence::constant(sign, Ordinal::from_terms(std::move(lambda))).concat(tail);
}

Ordinal OmegaPoly::ordinal_ceiling() const {
  if (sign() < 0) throw std::invalid_argument("ordinal_ceiling of negative " + str());
  std::vector<Ordinal::Term> out;
  for (auto& [e, c] : terms_) {
    if (c < 0) break;
    Integer up = bmp::numerator(c) / bmp::denominator(c);
    bool exact = up * bmp::denominator(c) == bmp::numerator(c);
    if (!exact) up += 1;
    if (up > Integer(std::numeric_limits<std::uint64_t>::max()))
      throw BudgetExceeded("ordinal ceiling coefficient overflow");
    out.push_back({e, static_cast<std::uint64_t>(up)});
    if (!exact) break;
  }
  return Ordinal::from_terms(std::move(out));
}

std::string OmegaPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& [e, c] = terms_[i];
    Rational mag = abs(c);
    if (i == 0) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (e.is_zero()) {
      out += rational_str(mag);
      continue;
    }
    if (mag != 1) out += "(" + rational_str(mag) + ")*";
    std::string es = e.str();
    if (e == Ordinal(1))
      out += "w";
    else if (e.is_finite() || es == "w")
      out += "w^" + es;
    else
      out += "w^(" + es + ")";
  }
  return out;
}

}  // namespace rk
