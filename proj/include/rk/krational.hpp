#pragma once

#include <string>

#include "rk/omega_poly.hpp"
#include "rk/ordinal.hpp"
#include "rk/sign_sequence.hpp"

namespace rk {

/// A surreal value num/den with num an OmegaPoly and den a positive ordinal.
/// Covers every rational, the exact sign-sequence fragment, and quotients such
/// as x - 1/(w*2+3) that arise as approximants at transfinite indices.
/// Finite denominators are folded into the numerator.
class KRational {
 public:
  KRational() : den_(1) {}
  KRational(const OmegaPoly& num, const Ordinal& den = Ordinal(1));  // NOLINT
  KRational(const Rational& q) : KRational(OmegaPoly(q)) {}           // NOLINT
  static KRational from_sign_sequence(const SignSequence& x);
  static KRational from_ordinal(const Ordinal& a) { return KRational(OmegaPoly::from_ordinal(a)); }

  const OmegaPoly& num() const { return num_; }
  const Ordinal& den() const { return den_; }
  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_.is_zero(); }
  std::optional<Rational> as_rational() const;

  /// Sign sequence of the value; BudgetExceeded outside the exact fragment.
  SignSequence to_sign_sequence() const;
  bool has_sign_sequence() const;

  /// 1/x. DivisionByZero on 0; BudgetExceeded unless the numerator is a
  /// rational multiple of an ordinal.
  KRational reciprocal() const;

  std::string str() const;

  friend KRational operator+(const KRational& a, const KRational& b);
  friend KRational operator-(const KRational& a);
  friend KRational operator-(const KRational& a, const KRational& b);
  friend KRational operator*(const KRational& a, const KRational& b);
  friend std::strong_ordering operator<=>(const KRational& a, const KRational& b);
  friend bool operator==(const KRational& a, const KRational& b);

 private:
  OmegaPoly num_;
  Ordinal den_;
};

/// 1/(alpha+1) as a KRational.
KRational unit_fraction(const Ordinal& alpha);
/// |a - b| < 1/(alpha+1), evaluated as |a - b|*(alpha+1) < 1.
bool within(const KRational& a, const KRational& b, const Ordinal& alpha);
/// a < b + 1/(alpha+1), evaluated as (a - b)*(alpha+1) < 1.
bool below_plus(const KRational& a, const KRational& b, const Ordinal& alpha);
KRational abs(const KRational& a);

}  // namespace rk
