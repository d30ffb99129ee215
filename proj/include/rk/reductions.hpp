#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rk/codecs.hpp"

namespace rk {

// ------------------------------------------------------------ rational codes

/// Raz name -> Cut name: left options are the codes of the prefixes followed
/// by +, right options those followed by -, converted recursively.
Name sign_to_cut(const Name& p);
/// Cut name -> Raz name, by the word-by-word bound scan over the recursively
/// converted options.
Name cut_to_sign(const Name& p);

/// The sign sequence selected by the bound scan: at each position the word of
/// the output is decided from M_L, the largest word (00 < 01 < 11) of a left
/// element still agreeing with the output, and m_R, the smallest such word on
/// the right:
///   M_L <= 00 and m_R >= 11 (absent sides ignored) -> 01, the output ends;
///   otherwise M_L >= 01                            -> 11 (+);
///   otherwise                                      -> 00 (-).
/// Throws MalformedCut unless left < right.
SignSequence bound_scan(const std::vector<SignSequence>& left, const std::vector<SignSequence>& right);

/// Field operations and order on Cut names.
Name r_add(const Name& p, const Name& q);
Name r_neg(const Name& p);
Name r_mul(const Name& p, const Name& q);
/// DivisionByZero at 0; BudgetExceeded when 1/x has no exact sign sequence.
Name r_inv(const Name& p);
bool r_lt(const Name& p, const Name& q);
SignSequence decode_cut_value(const Name& p);

// ------------------------------------------------------------ real names

/// q_a = p_(the a-th even ordinal).
Name veronese_to_cauchy(const Name& p);
/// With b = 2a + 2 (Hessenberg): q_a = x_b - 1/(b+1), q_(a+1) = x_b + 1/(b+1) for even a.
Name cauchy_to_veronese(const Name& p);

/// Decoded approximant x_a of a real name.
KRational approximant(const Name& p, const Ordinal& alpha);

/// Smallest a' with 2/(a'+1) <= 1/(a+1).
Ordinal add_modulus(const Ordinal& alpha);
/// Smallest a' with M/(a'+1) <= 1/(a+1), M = |x_0| + |y_0| + 3.
Ordinal mul_modulus(const KRational& m, const Ordinal& alpha);

Name rr_add(const Name& p, const Name& q);
Name rr_neg(const Name& p);
Name rr_mul(const Name& p, const Name& q);
/// Searches indices below `fuel` for a with |x_a|(a+1) > 2 (FuelExhausted otherwise).
Name rr_inv(const Name& p, std::size_t fuel = 64);

// ------------------------------------------------------------ realizers

/// A name transformer of fixed arity.
struct Realizer {
  std::string label;
  std::size_t arity = 1;
  std::function<Name(const std::vector<Name>&)> apply;

  Name operator()(const std::vector<Name>& inputs) const;
};

/// Events in query order: inputs read and outputs produced.
class AccessLog {
 public:
  struct Event {
    bool output;
    std::size_t input;  // which input, for input events
    Ordinal position;
  };
  void record(const Event& e);
  std::vector<Event> events() const;
  void clear();

 private:
  mutable std::mutex mutex_;
  std::vector<Event> events_;
};

/// A view of p that logs each bit read, preserving tuple structure so that
/// component reads are logged at their positions in p. Structure that would
/// let a decoder skip reading bits (runs, listed components, annotations) is
/// hidden.
Name logged_input(const Name& p, std::shared_ptr<AccessLog> log, std::size_t input);

struct ContinuityReport {
  bool ok = true;
  std::string detail;
  std::size_t checked = 0;
};

/// For each output position: apply the realizer to logged inputs, read the
/// output bit, then re-run it on inputs whose unread bits are all flipped and
/// require the same output bit. Also checks that in the log every output
/// event comes after the reads made while producing it.
ContinuityReport check_continuity(const Realizer& f, const std::vector<Name>& inputs,
                                  const std::vector<Ordinal>& output_positions);

Realizer realizer_sign_to_cut();
Realizer realizer_cut_to_sign();
Realizer realizer_r_add();
Realizer realizer_r_mul();
Realizer realizer_veronese_to_cauchy();
Realizer realizer_cauchy_to_veronese();
Realizer realizer_rr_add();
Realizer realizer_rr_neg();
Realizer realizer_rr_mul();
Realizer realizer_rr_inv(std::size_t fuel = 64);

}  // namespace rk
