#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace rk {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// True when the denominator is a power of two.
bool is_dyadic(const Rational& q);
/// "3/4", "-2", "0".
std::string rational_str(const Rational& q);
/// Accepts "p", "p/q" and finite decimals like "0.25".
Rational parse_rational(const std::string& text);

}  // namespace rk
