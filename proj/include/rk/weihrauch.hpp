#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rk/codecs.hpp"
#include "rk/reductions.hpp"

namespace rk {

// ------------------------------------------------------------ polynomials

/// Polynomial with rational coefficients, coeffs[k] for x^k.
struct Polynomial {
  std::vector<Rational> coeffs;

  /// Accepts sums and products of rational literals, x, parentheses and
  /// non-negative integer powers, with division by constants:
  /// "x^2-1/4", "(4x-1)(4x-3)(2x-1)/8", "0.5*x + 3".
  static Polynomial parse(const std::string& text);
  KRational operator()(const KRational& x) const;
  std::string str() const;
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

// ------------------------------------------------------------ function names

using Evaluator = std::function<KRational(const KRational&)>;

/// A continuous function given by a registered program index and an oracle
/// name; `eval` is built from the oracle by the program's factory.
struct ContinuousFunctionName {
  std::size_t program = 0;
  Name oracle = Name::constant(false);
  std::string label;
  Evaluator eval;

  KRational operator()(const KRational& x) const { return eval(x); }
};

using EvaluatorFactory = std::function<Evaluator(const Name& oracle)>;

/// Programs 0 (identity), 1 (polynomial), 2 (zero) and 3 (piecewise linear)
/// are registered on first use.
void register_program(std::size_t index, std::string label, EvaluatorFactory factory);
/// UnknownProgram unless `program` is registered.
ContinuousFunctionName make_function(std::size_t program, const Name& oracle);

ContinuousFunctionName identity_function();
ContinuousFunctionName zero_function();
ContinuousFunctionName polynomial_function(const Polynomial& p);
/// Linear interpolation through points with increasing x, extended beyond
/// the ends along the first and last segments.
ContinuousFunctionName piecewise_linear_function(const std::vector<std::pair<KRational, KRational>>& points);

/// 0^n 1 followed by the oracle.
Name fn_encode(const ContinuousFunctionName& f);
ContinuousFunctionName fn_decode(const Name& p);

// ------------------------------------------------------------ realizer checks

/// Sample inputs for a check, with the values they denote where known.
struct Sample {
  std::vector<Name> inputs;
  std::vector<KRational> values;
  std::string label;
};

/// Membership of a candidate output approximant x_a at tolerance index a.
struct MultiFunction {
  std::string label;
  std::function<bool(const Sample&, const KRational& approximant, const Ordinal& alpha)> accepts;
};

/// Single-valued f: accepts x_a with |x_a - f(values)| < 1/(a+1).
MultiFunction exact_function(std::string label, std::function<KRational(const std::vector<KRational>&)> f);
/// inputs[0] names a function on [0,1]: accepts x_a with |f(x_a)| < 1/(a+1)
/// and x_a within 1/(a+1) of [0,1].
MultiFunction ivt_multifunction();

struct CheckReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

std::vector<Ordinal> finite_indices(std::uint64_t n);

/// Decodes F's output at each index and tests membership; exceptions are
/// recorded as failures.
CheckReport check_realizes(const Realizer& F, const MultiFunction& f, const std::vector<Sample>& samples,
                           const std::vector<Ordinal>& indices);
/// Checks H(G(K(inputs))) against f. H receives only G's output.
CheckReport check_strong_reduction(const Realizer& H, const Realizer& K, const Realizer& G, const MultiFunction& f,
                                   const std::vector<Sample>& samples, const std::vector<Ordinal>& indices);

// ------------------------------------------------------------ boundedness

/// Families lower (nondecreasing) and upper (nonincreasing), inspected on
/// indices below `inspected`. `promise` asserts that some point lies weakly
/// between the whole families, which a bounded prefix cannot establish.
struct BIInstance {
  std::function<SignSequence(const Ordinal&)> lower;
  std::function<SignSequence(const Ordinal&)> upper;
  std::size_t inspected = 64;
  bool promise = true;

  /// Lists extended by their last element.
  static BIInstance from_lists(std::vector<SignSequence> lower, std::vector<SignSequence> upper,
                               std::size_t inspected = 64);
  /// MalformedInstance unless monotone with lower <= upper on the prefix and
  /// the promise is asserted.
  void validate() const;
};

/// Stabilized families give the constant name of the simplest value between
/// them. Otherwise a bracket narrower than 1/(precision+1) must occur in the
/// prefix (FuelExhausted if not); the result is the veronese_to_cauchy image
/// of the brackets (lower, upper) chosen per index.
Name bi_solve(const BIInstance& inst, std::size_t precision = 32);

/// Tuple with lower(i) at the i-th even index and upper(i) right after it.
Name bi_encode(const BIInstance& inst);
BIInstance bi_decode(const Name& p, std::size_t inspected = 64);

/// The piecewise-linear nondecreasing function that is x - L below L, 0 on
/// [L, U] and x - U above U, where [L, U] is the admissible set of the
/// inspected prefix.
ContinuousFunctionName bi_to_ivt(const BIInstance& inst);

// ------------------------------------------------------------ IVT

/// Dyadics in [0,1] by sign-sequence length, then lexicographically with
/// - before +: 0, 1, 1/2, 1/4, 3/4, 1/8, ...
SignSequence enumerate_dense(std::uint64_t gamma);
Rational dense_value(std::uint64_t gamma);

struct IvtStages {
  std::vector<SignSequence> lower, upper;
  std::size_t evaluations = 0;
  std::size_t dovetailed = 0;  // stages that used the paired candidates
};

/// Runs the bracketing stages for g = f - r: at stage a = <b, <c, d>> the
/// candidates enumerate_dense(c) < enumerate_dense(d) are taken when they lie
/// inside the current bracket with g < 0 and g > 0 and their combined length
/// is at most b; otherwise the first dense points inside the bracket with
/// the required signs are taken. BadEndpoints unless g(0) < 0 < g(1);
/// FuelExhausted after `fuel` evaluations.
IvtStages ivt_stages(const ContinuousFunctionName& f, const SignSequence& r, std::size_t stages, std::size_t fuel);

/// bi_solve on the staged brackets.
Name ivt_solve(const ContinuousFunctionName& f, const SignSequence& r, std::size_t fuel = 100000,
               std::size_t stages = 40, std::size_t precision = 32);

/// The translation of IVT into boundedness: K stages the brackets of the
/// function named by its input, G solves the instance, H passes G's output on.
Realizer realizer_ivt_to_bi(const SignSequence& r, std::size_t stages = 40, std::size_t fuel = 100000);
Realizer realizer_bi_solve(std::size_t inspected = 40, std::size_t precision = 32);
Realizer realizer_identity();

}  // namespace rk
