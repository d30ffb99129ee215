#include "rk/krational.hpp"

#include "rk/errors.hpp"

namespace rk {

namespace bmp = boost::multiprecision;

KRational::KRational(const OmegaPoly& num, const Ordinal& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DivisionByZero("KRational with zero denominator");
  if (auto d = den_.finite_value(); d && *d != 1) {
    num_ = num_ * OmegaPoly(Rational(1, *d));
    den_ = Ordinal(1);
  }
}

KRational KRational::from_sign_sequence(const SignSequence& x) {
  return KRational(OmegaPoly::from_sign_sequence(x));
}

std::optional<Rational> KRational::as_rational() const {
  if (den_ != Ordinal(1) || !num_.is_rational()) return std::nullopt;
  return num_.constant_term();
}

SignSequence KRational::to_sign_sequence() const {
  if (den_ != Ordinal(1)) throw BudgetExceeded("value " + str() + " is outside the exact fragment");
  return num_.to_sign_sequence();
}

bool KRational::has_sign_sequence() const {
  try {
    to_sign_sequence();
    return true;
  } catch (const BudgetExceeded&) {
    return false;
  }
}

KRational KRational::reciprocal() const {
  if (num_.is_zero()) throw DivisionByZero("reciprocal of zero");
  const OmegaPoly den = OmegaPoly::from_ordinal(den_);
  if (num_.is_rational()) return KRational(den * OmegaPoly(1 / num_.constant_term()));
  // num = c * a for an ordinal a and a rational c: 1/x = den / (c*a).
  const Rational lead = num_.terms().front().second;
  const OmegaPoly scaled = num_ * OmegaPoly(1 / lead);
  Integer lcm = 1;
  for (auto& [e, c] : scaled.terms()) {
    if (c < 0) throw BudgetExceeded("reciprocal of " + str() + " is outside the exact fragment");
    lcm = bmp::lcm(lcm, bmp::denominator(c));
  }
  const OmegaPoly a = scaled * OmegaPoly(Rational(lcm));
  std::vector<Ordinal::Term> terms;
  for (auto& [e, c] : a.terms()) {
    if (bmp::numerator(c) > Integer(std::numeric_limits<std::uint64_t>::max()))
      throw BudgetExceeded("reciprocal coefficient overflow");
    terms.push_back({e, static_cast<std::uint64_t>(bmp::numerator(c))});
  }
  // x = lead/lcm * a / den, so 1/x = (lcm/lead) * den / a.
  return KRational(den * OmegaPoly(Rational(lcm) / lead), Ordinal::from_terms(std::move(terms)));
}

std::string KRational::str() const {
  if (den_ == Ordinal(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

KRational operator+(const KRational& a, const KRational& b) {
  if (a.den_ == b.den_) return KRational(a.num_ + b.num_, a.den_);
  const OmegaPoly da = OmegaPoly::from_ordinal(a.den_), db = OmegaPoly::from_ordinal(b.den_);
  return KRational(a.num_ * db + b.num_ * da, nat_mul(a.den_, b.den_));
}

KRational operator-(const KRational& a) { return KRational(-a.num_, a.den_); }

KRational operator-(const KRational& a, const KRational& b) { return a + (-b); }

KRational operator*(const KRational& a, const KRational& b) {
  return KRational(a.num_ * b.num_, nat_mul(a.den_, b.den_));
}

std::strong_ordering operator<=>(const KRational& a, const KRational& b) {
  // Denominators are positive, so cross-multiplying preserves the order.
  return a.num_ * OmegaPoly::from_ordinal(b.den_) <=> b.num_ * OmegaPoly::from_ordinal(a.den_);
}

bool operator==(const KRational& a, const KRational& b) { return (a <=> b) == 0; }

KRational unit_fraction(const Ordinal& alpha) { return KRational(OmegaPoly(1), succ(alpha)); }

KRational abs(const KRational& a) { return a.sign() < 0 ? -a : a; }

bool below_plus(const KRational& a, const KRational& b, const Ordinal& alpha) {
  return (a - b) * KRational::from_ordinal(succ(alpha)) < KRational(1);
}

bool within(const KRational& a, const KRational& b, const Ordinal& alpha) {
  return below_plus(a, b, alpha) && below_plus(b, a, alpha);
}

}  // namespace rk
