#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rk {

/// An ordinal below epsilon_0 in Cantor normal form
///   w^e1*c1 + w^e2*c2 + ... + w^ek*ck,  e1 > e2 > ... > ek,  ci >= 1.
///
/// The representation is kept canonical by every constructor and operation, so
/// structural equality is ordinal equality. Values are immutable.
class Ordinal {
 public:
  struct Term;

  Ordinal() = default;
  explicit Ordinal(std::uint64_t n);

  static Ordinal omega();
  /// w^exponent * coefficient; coefficient 0 yields zero.
  static Ordinal omega_power(const Ordinal& exponent, std::uint64_t coefficient = 1);
  /// Validates canonical form (strictly decreasing exponents, coefficients >= 1).
  static Ordinal from_terms(std::vector<Term> terms);
  static Ordinal parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  bool is_limit() const;  // nonzero with finite part 0
  bool is_successor() const { return finite_part() > 0; }

  std::optional<std::uint64_t> finite_value() const;
  std::uint64_t finite_part() const;
  Ordinal limit_part() const;
  /// Exponent of the leading term; zero for the ordinal 0.
  Ordinal leading_exponent() const;
  /// Exponent of the trailing term; zero for the ordinal 0.
  Ordinal trailing_exponent() const;

  std::string str() const;
  std::size_t hash() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);
  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;
};

struct Ordinal::Term {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  friend bool operator==(const Term&, const Term&) = default;
};

std::strong_ordering cmp(const Ordinal& a, const Ordinal& b);

/// Standard (non-commutative) ordinal sum and product.
Ordinal ord_add(const Ordinal& a, const Ordinal& b);
Ordinal ord_mul(const Ordinal& a, const Ordinal& b);
/// The unique d with a + d = b. Requires a <= b.
Ordinal ord_sub(const Ordinal& a, const Ordinal& b);
Ordinal succ(const Ordinal& a);
/// Predecessor of a successor ordinal.
Ordinal pred(const Ordinal& a);

/// Hessenberg (natural) sum and product.
Ordinal nat_add(const Ordinal& a, const Ordinal& b);
Ordinal nat_mul(const Ordinal& a, const Ordinal& b);

/// a = k*quotient + remainder with remainder < k (left division by a natural).
struct FiniteDivision {
  Ordinal quotient;
  std::uint64_t remainder;
};
FiniteDivision div_finite(const Ordinal& a, std::uint64_t k);

struct Parity {
  Ordinal limit_part;
  std::uint64_t finite_part;
  bool is_even;
};
/// a = limit_part + finite_part with limit_part a limit or zero.
Parity parity(const Ordinal& a);
bool is_even(const Ordinal& a);

/// The a-th even ordinal (0-based); lambda + n maps to lambda + 2n.
Ordinal nth_even(const Ordinal& a);
/// Index of an even ordinal in the enumeration of evens (inverse of nth_even).
Ordinal even_index(const Ordinal& even);

/// Order type of the pairs with max < mu under the Goedel well-ordering.
Ordinal godel_block_start(const Ordinal& mu);
Ordinal godel_pair(const Ordinal& a, const Ordinal& b);
std::pair<Ordinal, Ordinal> godel_unpair(const Ordinal& c);

/// Largest x <= upper with holds(x), for a predicate that is downward closed
/// and continuous (holds at a limit whenever it holds below it). Requires
/// holds(0).
Ordinal greatest_satisfying(const std::function<bool(const Ordinal&)>& holds,
                            const Ordinal& upper);

struct OrdinalHash {
  std::size_t operator()(const Ordinal& a) const { return a.hash(); }
};

}  // namespace rk
