#pragma once

// Generators and independent oracles shared by the test binaries.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "rk/ordinal.hpp"
#include "rk/sign_sequence.hpp"

namespace rk::testing {

using BigRational = boost::multiprecision::cpp_rational;

inline Ordinal ord(const char* text) { return Ordinal::parse(text); }

/// Random ordinal in CNF: up to `width` terms, exponents drawn recursively.
inline Ordinal random_ordinal(std::mt19937_64& rng, int depth = 2, int width = 3) {
  std::uniform_int_distribution<int> nterms(0, width);
  std::uniform_int_distribution<std::uint64_t> coeff(1, 5);
  std::vector<Ordinal> exps;
  const int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Ordinal e = depth > 0 ? random_ordinal(rng, depth - 1, 2) : Ordinal(coeff(rng) % 3);
    exps.push_back(e);
  }
  std::sort(exps.begin(), exps.end(), std::greater<>());
  exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
  std::vector<Ordinal::Term> terms;
  for (auto& e : exps) terms.push_back({e, coeff(rng)});
  return Ordinal::from_terms(std::move(terms));
}

/// The Goedel well-ordering of pairs, straight from its definition.
inline bool godel_precedes(const Ordinal& a0, const Ordinal& b0, const Ordinal& a1, const Ordinal& b1) {
  const Ordinal& m0 = std::max(a0, b0);
  const Ordinal& m1 = std::max(a1, b1);
  if (m0 != m1) return m0 < m1;
  if (a0 != a1) return a0 < a1;
  return b0 < b1;
}

/// Every sign string (over '+'/'-') of length exactly n, in lexicographic
/// order with '-' before '+'.
inline std::vector<std::string> sign_strings(int n) {
  std::vector<std::string> out{""};
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (auto& s : out) {
      next.push_back(s + '-');
      next.push_back(s + '+');
    }
    out = std::move(next);
  }
  return out;
}

inline std::vector<std::string> sign_strings_up_to(int n) {
  std::vector<std::string> out;
  for (int k = 0; k <= n; ++k)
    for (auto& s : sign_strings(k)) out.push_back(s);
  return out;
}

/// Dyadic value of a finite sign string, by the birth-order walk of the
/// binary tree of dyadics: integer steps until the first sign change, then
/// halving steps. Independent of the library's surreal code.
inline BigRational dyadic_of(const std::string& s) {
  BigRational v = 0;
  std::size_t i = 0;
  while (i < s.size() && s[i] == s[0]) {
    v += (s[0] == '+') ? 1 : -1;
    ++i;
  }
  BigRational step = 1;
  for (; i < s.size(); ++i) {
    step /= 2;
    v += (s[i] == '+') ? step : -step;
  }
  return v;
}

/// The first sign string (shortest, then in enumeration order) strictly
/// between L and R, compared by dyadic value.
inline std::optional<std::string> brute_simplest(const std::vector<std::string>& L,
                                                 const std::vector<std::string>& R, int max_len) {
  for (auto& cand : sign_strings_up_to(max_len)) {
    BigRational v = dyadic_of(cand);
    bool ok = true;
    for (auto& l : L) ok = ok && dyadic_of(l) < v;
    for (auto& r : R) ok = ok && v < dyadic_of(r);
    if (ok) return cand;
  }
  return std::nullopt;
}

}  // namespace rk::testing

namespace rk::testing {

/// Compact "+-..." text of a finite sign sequence, at any length.
inline std::string sign_string(const SignSequence& s) {
  std::string out;
  for (auto& r : s.runs()) out.append(*r.length.finite_value(), sign_char(r.sign));
  return out;
}

}  // namespace rk::testing

namespace rk {
inline void PrintTo(const SignSequence& s, std::ostream* os) { *os << s.str(); }
inline void PrintTo(const Ordinal& o, std::ostream* os) { *os << o.str(); }
}  // namespace rk
