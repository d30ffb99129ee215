#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rk/ordinal.hpp"
#include "rk/rational.hpp"

namespace rk {

enum class Sign : unsigned char { MINUS, PLUS };

inline Sign flip(Sign s) { return s == Sign::PLUS ? Sign::MINUS : Sign::PLUS; }
inline char sign_char(Sign s) { return s == Sign::PLUS ? '+' : '-'; }

/// A surreal number as a run-length encoded sign sequence of ordinal length.
/// Adjacent runs always carry opposite signs, so equal values have equal
/// representations.
class SignSequence {
 public:
  struct Run {
    Sign sign;
    Ordinal length;  // >= 1
    friend bool operator==(const Run&, const Run&) = default;
  };

  SignSequence() = default;
  /// Merges adjacent equal-sign runs and drops empty ones.
  static SignSequence from_runs(std::vector<Run> runs);
  static SignSequence constant(Sign s, const Ordinal& length);
  static SignSequence ordinal(const Ordinal& a) { return constant(Sign::PLUS, a); }
  /// Compact "+-++", run form "(+)^w(-)^3", or a mix; "0" or "" is the empty sequence.
  static SignSequence parse(std::string_view text);

  const std::vector<Run>& runs() const { return runs_; }
  bool is_zero() const { return runs_.empty(); }
  bool is_finite() const;  // every run finite
  Ordinal length() const;
  std::size_t run_count() const { return runs_.size(); }

  /// Sign at position pos; nullopt when pos >= length.
  std::optional<Sign> sign_at(const Ordinal& pos) const;
  /// Restriction to positions < n (n <= length, else the whole sequence).
  SignSequence prefix(const Ordinal& n) const;
  SignSequence append(Sign s, const Ordinal& count = Ordinal(1)) const;
  SignSequence concat(const SignSequence& tail) const;
  SignSequence negated() const;
  /// True when this is a (not necessarily proper) prefix of other.
  bool is_prefix_of(const SignSequence& other) const;
  /// Least position >= from carrying sign s.
  std::optional<Ordinal> first_position(Sign s, const Ordinal& from) const;

  /// Compact form when all runs are finite and short, run form otherwise.
  std::string str() const;
  std::string key() const;  // canonical, used for memo tables
  std::size_t hash() const;

  friend bool operator==(const SignSequence&, const SignSequence&) = default;

 private:
  std::vector<Run> runs_;
};

enum class Cmp { LT, EQ, GT };

Cmp s_cmp(const SignSequence& x, const SignSequence& y);
bool s_less(const SignSequence& x, const SignSequence& y);
Ordinal common_prefix_length(const SignSequence& x, const SignSequence& y);

struct SignSequenceHash {
  std::size_t operator()(const SignSequence& s) const { return s.hash(); }
};

/// A pair of finite sets of surreals, intended to satisfy left < right.
struct Cut {
  std::vector<SignSequence> left;
  std::vector<SignSequence> right;
};

/// The unique shortest x with left < x < right. Throws MalformedCut when
/// some element of left is not below some element of right.
SignSequence simplest_between(const Cut& c);
/// Proper prefixes of x split by side; simplest_between of it gives back x.
/// Transfinite x has infinitely many prefixes, so only finite x are accepted
/// (BudgetExceeded otherwise).
Cut canonical_cut(const SignSequence& x);

/// Value of a finite sign sequence; nullopt when some run is transfinite.
std::optional<Rational> to_fraction(const SignSequence& x);
/// Inverse of to_fraction. Throws std::invalid_argument on non-dyadic input.
SignSequence from_dyadic(const Rational& d);

}  // namespace rk
