#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "rk/omega_poly.hpp"
#include "rk/rational.hpp"
#include "rk/sign_sequence.hpp"

namespace rk {

/// Limits on the cut recursion. Exceeding either raises BudgetExceeded.
struct SurrealBudget {
  int depth = 64;  // nesting of recursive calls per operation
  int runs = 32;   // runs in any intermediate or final result
};

SurrealBudget surreal_budget();
void set_surreal_budget(const SurrealBudget& b);
/// Drops the calling thread's memo tables.
void clear_surreal_memo();

/// Conway's field operations. Finite operands go through the recursion on
/// canonical cuts (memoized per thread); operands with a transfinite run are
/// evaluated in the OmegaPoly fragment.
SignSequence s_add(const SignSequence& x, const SignSequence& y);
SignSequence s_neg(const SignSequence& x);
SignSequence s_sub(const SignSequence& x, const SignSequence& y);
SignSequence s_mul(const SignSequence& x, const SignSequence& y);

/// -x straight from the cut formula -x = [-R | -L]; s_neg flips signs instead.
SignSequence s_neg_by_cut(const SignSequence& x);

enum class Side { LOW, HIGH };

struct InverseApproximant {
  std::vector<Rational> word;  // z_0, ..., z_n drawn from the nonzero options of z
  Rational value;
  Side side;
  /// The approximant as a sign sequence when it is dyadic.
  std::optional<SignSequence> sequence() const;
};

/// Enumerates the approximants r_w of 1/z from the inverse recursion
///   (z - z_n) r_{w'} + z_n r_w = 1,   w = w' z_n,   r_<> = 0,
/// over words w in the nonzero options of the canonical cut of z, shortest
/// words first and lexicographically (options ordered by value) within a
/// length. An approximant is LOW when an even number of its letters are left
/// options, HIGH otherwise.
class InverseApproximants {
 public:
  /// z must be positive (NonPositive) and finite (BudgetExceeded).
  explicit InverseApproximants(const SignSequence& z, std::size_t max_word_length = 12);
  /// Next approximant; nullopt when z has no nonzero options and every word
  /// has been produced. BudgetExceeded once the word-length budget is spent.
  std::optional<InverseApproximant> next();
  const std::vector<Rational>& options() const { return options_; }

 private:
  Rational z_;
  std::vector<Rational> options_;
  std::vector<bool> option_is_left_;
  std::size_t max_len_;
  // Frontier of the current length, as (word indices, value, left-count).
  struct Node {
    std::vector<std::size_t> word;
    Rational value;
    std::size_t lefts;
  };
  std::vector<Node> level_;
  std::size_t pos_ = 0;
  std::size_t length_ = 0;
};

InverseApproximants s_inv_approx(const SignSequence& z, std::size_t max_word_length = 12);

}  // namespace rk
