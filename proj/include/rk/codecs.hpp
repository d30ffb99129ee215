#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rk/krational.hpp"
#include "rk/name.hpp"
#include "rk/sign_sequence.hpp"

namespace rk {

/// Makes annotated lazy names ("cut:...", "kk:...") deserializable.
void register_codec_factories();

/// Indices where conditions quantified over all of kappa are checked:
/// 0..31 together with the landmarks w and w+1, restricted to < up_to.
std::vector<Ordinal> inspection_indices(const Ordinal& up_to);

// -- delta_kappa: alpha as 0^alpha 1 0 0 ...

Name delta_kappa_encode(const Ordinal& alpha, std::optional<Ordinal> budget = std::nullopt);
/// InvalidName unless p has a single 1.
Ordinal delta_kappa_decode(const Name& p);

// -- delta_{kappa^kappa}: families as [0^(a_b + 1) 1]_b

/// An eventually periodic family of ordinals: `prefix`, then `cycle` repeated.
/// A transfinite index b >= prefix.size() picks the cycle entry of the finite
/// part of b - prefix.size().
struct OrdinalFamily {
  std::vector<Ordinal> prefix;
  std::vector<Ordinal> cycle{Ordinal(0)};

  Ordinal at(const Ordinal& index) const;
  /// "[2, w, 1; 0]": the prefix, then the repeating cycle after ';'.
  std::string str() const;
  static OrdinalFamily parse(const std::string& text);
  /// Equality of the families denoted (representations may differ).
  friend bool operator==(const OrdinalFamily&, const OrdinalFamily&);
};

Name delta_kk_encode(const OrdinalFamily& x, std::optional<Ordinal> budget = std::nullopt);
OrdinalFamily delta_kk_decode(const Name& p);

// -- Raz: sign sequences as 2-bit words 11 (+), 00 (-), then 01 forever.

Name raz_encode(const SignSequence& q, std::optional<Ordinal> budget = std::nullopt);
SignSequence raz_decode(const Name& p);

// -- Cut: tuples whose even components code left options and odd components
// right options, each padded with placeholders [10].

Name cut_encode(const SignSequence& q, std::optional<Ordinal> budget = std::nullopt);
/// rank_budget bounds the nesting of the recursive decoding.
SignSequence cut_decode(const Name& p, int rank_budget = 64);
/// The option sets of a Cut name with finitely many options, each option
/// decoded by `decode`. Checks the placeholder discipline (InvalidName).
Cut cut_options(const Name& p, const std::function<SignSequence(const Name&)>& decode);
/// True when p is an annotated lazy Cut name (possibly infinitely many options).
bool is_lazy_cut(const Name& p);

// -- kappa-rational components of real names. Values with a sign sequence in
// the exact fragment are Raz codes; other quotients use a tuple whose first
// word is 10 (never a Raz word): (placeholder, den, term count, then for each
// term its exponent, integer numerator and denominator).

Name krational_encode(const KRational& q, std::optional<Ordinal> budget = std::nullopt);
KRational krational_decode(const Name& p);

// -- real numbers

/// The constant Cauchy name (code of x, code of x, ...).
Name rk_cauchy_encode(const KRational& x, std::optional<Ordinal> budget = std::nullopt);
Name rk_cauchy_encode(const SignSequence& x, std::optional<Ordinal> budget = std::nullopt);
/// Tuple whose a-th component codes approximants(a).
Name real_name(std::function<KRational(const Ordinal&)> approximants,
               std::optional<Ordinal> budget = std::nullopt, std::string annotation = {});

struct CheckResult {
  bool ok = true;
  std::optional<Ordinal> failed_at;
  std::string detail;
  explicit operator bool() const { return ok; }
};

/// x_a < x + 1/(a+1) and x < x_a + 1/(a+1) for every inspected a < up_to.
CheckResult rk_cauchy_check(const Name& p, const KRational& x, const Ordinal& up_to);
/// x_(a+1) < x_a + 1/(a+1) for every inspected even a < up_to.
CheckResult rk_veronese_check(const Name& p, const Ordinal& up_to);

}  // namespace rk
