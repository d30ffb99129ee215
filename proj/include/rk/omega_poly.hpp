#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rk/ordinal.hpp"
#include "rk/rational.hpp"
#include "rk/sign_sequence.hpp"

namespace rk {

/// Finite sums  c1*w^e1 + ... + ck*w^ek  with rational coefficients and
/// ordinal exponents e1 > ... > ek. This is a subring of the surreals that
/// contains the ordinals (with Hessenberg operations) and the rationals; it is
/// where transfinite surreal arithmetic is carried out exactly.
class OmegaPoly {
 public:
  using Term = std::pair<Ordinal, Rational>;

  OmegaPoly() = default;
  OmegaPoly(const Rational& q);  // NOLINT(google-explicit-constructor)
  static OmegaPoly from_ordinal(const Ordinal& a);
  /// Exact value of sign sequences of the form s^a followed by a finite tail.
  /// Anything else is outside the supported fragment: BudgetExceeded.
  static OmegaPoly from_sign_sequence(const SignSequence& x);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int sign() const;
  bool is_rational() const;
  /// Coefficient of w^0.
  Rational constant_term() const;
  /// Inverse of from_sign_sequence: values +-lambda + d with lambda an ordinal
  /// with no finite part and d dyadic. BudgetExceeded otherwise.
  SignSequence to_sign_sequence() const;
  /// Least ordinal >= this (this >= 0 required).
  Ordinal ordinal_ceiling() const;

  std::string str() const;

  friend OmegaPoly operator+(const OmegaPoly& a, const OmegaPoly& b);
  friend OmegaPoly operator-(const OmegaPoly& a);
  friend OmegaPoly operator-(const OmegaPoly& a, const OmegaPoly& b);
  friend OmegaPoly operator*(const OmegaPoly& a, const OmegaPoly& b);
  friend bool operator==(const OmegaPoly&, const OmegaPoly&) = default;
  friend std::strong_ordering operator<=>(const OmegaPoly& a, const OmegaPoly& b);

 private:
  void normalize();
  std::vector<Term> terms_;
};

}  // namespace rk
