#pragma once

#include <string>

#include "rk/sign_sequence.hpp"

namespace rk::cli {

/// Evaluates surreal expressions: sign-sequence literals ("+-+", "(+)^w(-)^3"),
/// numerals ("3", "-1/4", "0.75", dyadic only), ordinals ("w", "w^2"),
/// parentheses and the operators + - *. A sign literal is read in operand
/// position only, so "+- + 1" adds 1/2 and 1, and "-1" negates 1.
///
/// ParseError on malformed text. Errors raised by the arithmetic are rethrown
/// with the offending sub-expression prepended.
SignSequence evaluate(const std::string& text);

/// "1", "-3/4", "ω+1", "-ω"; empty when the value has no finite description.
std::string describe_value(const SignSequence& x);

/// The run form, or "⟨⟩" for 0.
std::string show_sequence(const SignSequence& x);

}  // namespace rk::cli
