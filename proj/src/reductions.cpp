#include "rk/reductions.hpp"

#include <algorithm>
#include <set>

#include "rk/errors.hpp"
#include "rk/surreal.hpp"

namespace rk {

// ------------------------------------------------------------ bound scan

namespace {

// Words of a sign sequence at a position, ordered 00 < 01 < 11.
enum class Word { MINUS = 0, END = 1, PLUS = 2 };

Word word_at(const SignSequence& s, const Ordinal& pos) {
  if (!(pos < s.length())) return Word::END;
  return s.sign_at(pos) == Sign::PLUS ? Word::PLUS : Word::MINUS;
}

// Length of the constant stretch of s starting at pos (pos < length).
Ordinal stretch(const SignSequence& s, const Ordinal& pos) {
  Ordinal start;
  for (auto& r : s.runs()) {
    Ordinal end = ord_add(start, r.length);
    if (pos < end) return ord_sub(pos, end);
    start = end;
  }
  throw std::logic_error("stretch: position past the end");
}

}  // namespace

SignSequence bound_scan(const std::vector<SignSequence>& left, const std::vector<SignSequence>& right) {
  for (auto& l : left)
    for (auto& r : right)
      if (!s_less(l, r)) throw MalformedCut("left option " + l.str() + " is not below right option " + r.str());

  std::vector<const SignSequence*> active_left, active_right;
  for (auto& l : left) active_left.push_back(&l);
  for (auto& r : right) active_right.push_back(&r);

  std::vector<SignSequence::Run> out;
  Ordinal pos;
  // Each step either drops an active element or reaches the end of one of its
  // runs, so the loop is bounded by the total number of runs.
  for (;;) {
    std::optional<Word> max_left, min_right;
    for (auto* l : active_left) max_left = std::max(max_left.value_or(Word::MINUS), word_at(*l, pos));
    for (auto* r : active_right) min_right = std::min(min_right.value_or(Word::PLUS), word_at(*r, pos));

    const bool left_done = !max_left || *max_left == Word::MINUS;
    const bool right_done = !min_right || *min_right == Word::PLUS;
    if (left_done && right_done) break;
    const Word w = (max_left && *max_left >= Word::END) ? Word::PLUS : Word::MINUS;

    bool uniform = true;
    std::optional<Ordinal> len;
    for (auto* list : {&active_left, &active_right})
      for (auto* e : *list) {
        if (word_at(*e, pos) != w) {
          uniform = false;
          continue;
        }
        Ordinal s = stretch(*e, pos);
        if (!len || s < *len) len = s;
      }
    const Ordinal step = uniform ? *len : Ordinal(1);
    out.push_back({w == Word::PLUS ? Sign::PLUS : Sign::MINUS, step});
    for (auto* list : {&active_left, &active_right})
      std::erase_if(*list, [&](const SignSequence* e) { return word_at(*e, pos) != w; });
    pos = ord_add(pos, step);
  }
  return SignSequence::from_runs(out);
}

// ------------------------------------------------------------ rational codes

namespace {

SignSequence scan_value(const Name& p, int rank_budget) {
  if (rank_budget <= 0) throw InvalidName("cut: recursion exceeds the rank budget");
  // Infinitely many options: only the verified certificate can be read.
  if (is_lazy_cut(p)) return cut_decode(p, rank_budget);
  Cut c = cut_options(p, [rank_budget](const Name& o) { return scan_value(o, rank_budget - 1); });
  try {
    return bound_scan(c.left, c.right);
  } catch (const MalformedCut& e) {
    throw InvalidName(std::string("cut: options are not separated: ") + e.what());
  }
}

}  // namespace

SignSequence decode_cut_value(const Name& p) { return scan_value(p, 64); }

Name sign_to_cut(const Name& p) { return cut_encode(raz_decode(p), p.budget()); }

Name cut_to_sign(const Name& p) { return raz_encode(decode_cut_value(p), p.budget()); }

Name r_add(const Name& p, const Name& q) {
  return cut_encode(s_add(decode_cut_value(p), decode_cut_value(q)), p.budget());
}

Name r_neg(const Name& p) { return cut_encode(s_neg(decode_cut_value(p)), p.budget()); }

Name r_mul(const Name& p, const Name& q) {
  return cut_encode(s_mul(decode_cut_value(p), decode_cut_value(q)), p.budget());
}

bool r_lt(const Name& p, const Name& q) { return s_less(decode_cut_value(p), decode_cut_value(q)); }

Name r_inv(const Name& p) {
  const SignSequence x = decode_cut_value(p);
  if (x.is_zero()) throw DivisionByZero("r_inv: the name denotes 0");
  const bool negative = x.sign_at(Ordinal(0)) == Sign::MINUS;
  const SignSequence z = negative ? s_neg(x) : x;
  const KRational zk = KRational::from_sign_sequence(z);

  // The simplest value between the low and high inverse approximants found
  // so far; it settles on 1/z whenever 1/z is dyadic.
  std::optional<SignSequence> result;
  if (z.is_finite()) {
    try {
      InverseApproximants gen(z, 12);
      Cut cut;
      for (int n = 0; n < 256; ++n) {
        auto a = gen.next();
        if (!a) break;
        auto s = a->sequence();
        if (!s) break;
        (a->side == Side::LOW ? cut.left : cut.right).push_back(*s);
        SignSequence candidate = simplest_between(cut);
        if (KRational::from_sign_sequence(candidate) * zk == KRational(Rational(1))) {
          result = candidate;
          break;
        }
      }
    } catch (const BudgetExceeded&) {
    }
  }
  if (!result) {
    KRational r = zk.reciprocal();
    if (!r.has_sign_sequence()) throw BudgetExceeded("r_inv: 1/" + x.str() + " has no finite-run sign sequence");
    result = r.to_sign_sequence();
  }
  return cut_encode(negative ? s_neg(*result) : *result, p.budget());
}

// ------------------------------------------------------------ real names

KRational approximant(const Name& p, const Ordinal& alpha) { return krational_decode(p.component(alpha)); }

Name veronese_to_cauchy(const Name& p) {
  return Name::tuple([p](const Ordinal& alpha) { return p.component(nth_even(alpha)); }, p.budget());
}

Name cauchy_to_veronese(const Name& p) {
  return real_name(
      [p](const Ordinal& alpha) {
        const bool even = is_even(alpha);
        const Ordinal base = even ? alpha : pred(alpha);
        const Ordinal beta = nat_add(nat_mul(Ordinal(2), base), Ordinal(2));
        const KRational x = approximant(p, beta);
        return even ? x - unit_fraction(beta) : x + unit_fraction(beta);
      },
      p.budget());
}

namespace {

// Least a with a + 1 >= v, for v > 0.
Ordinal index_at_least(const OmegaPoly& v) {
  Ordinal c = v.ordinal_ceiling();
  return c.is_successor() ? pred(c) : c;
}

OmegaPoly scaled(const Ordinal& alpha, const Rational& k) { return OmegaPoly::from_ordinal(succ(alpha)) * OmegaPoly(k); }

}  // namespace

Ordinal add_modulus(const Ordinal& alpha) { return pred(nat_mul(succ(alpha), Ordinal(2))); }

Ordinal mul_modulus(const KRational& m, const Ordinal& alpha) {
  if (m.den() != Ordinal(1)) throw BudgetExceeded("mul_modulus: bound " + m.str() + " has a transfinite denominator");
  return index_at_least(m.num() * OmegaPoly::from_ordinal(succ(alpha)));
}

Name rr_neg(const Name& p) {
  return real_name([p](const Ordinal& alpha) { return -approximant(p, alpha); }, p.budget());
}

Name rr_add(const Name& p, const Name& q) {
  return real_name(
      [p, q](const Ordinal& alpha) {
        const Ordinal a = add_modulus(alpha);
        return approximant(p, a) + approximant(q, a);
      },
      p.budget());
}

Name rr_mul(const Name& p, const Name& q) {
  // |x| <= |x_0| + 1 and |y_a| <= |y_0| + 2, so the error of x_a y_a is below
  // (|x_0| + |y_0| + 3)/(a+1).
  const KRational m = abs(approximant(p, Ordinal(0))) + abs(approximant(q, Ordinal(0))) + KRational(Rational(3));
  return real_name(
      [p, q, m](const Ordinal& alpha) {
        const Ordinal a = mul_modulus(m, alpha);
        return approximant(p, a) * approximant(q, a);
      },
      p.budget());
}

Name rr_inv(const Name& p, std::size_t fuel) {
  std::optional<Rational> lower;
  for (std::size_t i = 0; i < fuel && !lower; ++i) {
    const Ordinal a(i);
    const KRational xa = abs(approximant(p, a));
    if (xa * KRational::from_ordinal(succ(a)) > KRational(Rational(2))) {
      auto m = (xa - unit_fraction(a)).as_rational();
      if (!m) throw BudgetExceeded("rr_inv: witness approximant " + xa.str() + " is not rational");
      lower = *m;
    }
  }
  if (!lower) throw FuelExhausted("rr_inv: no index below " + std::to_string(fuel) + " separates the value from 0");
  // |x| > m. Past index a' with 1/(a'+1) <= m/2 we have |x_a'| > m/2, hence
  // |1/x - 1/x_a'| < 2/((a'+1) m^2).
  const Rational m = *lower;
  const Ordinal floor_index = index_at_least(OmegaPoly(Rational(2) / m));
  return real_name(
      [p, m, floor_index](const Ordinal& alpha) {
        Ordinal a = index_at_least(scaled(alpha, Rational(2) / (m * m)));
        if (a < floor_index) a = floor_index;
        return approximant(p, a).reciprocal();
      },
      p.budget());
}

// ------------------------------------------------------------ realizers

Name Realizer::operator()(const std::vector<Name>& inputs) const {
  if (inputs.size() != arity)
    throw std::invalid_argument(label + ": expected " + std::to_string(arity) + " inputs, got " +
                                std::to_string(inputs.size()));
  return apply(inputs);
}

void AccessLog::record(const Event& e) {
  std::lock_guard lock(mutex_);
  events_.push_back(e);
}

std::vector<AccessLog::Event> AccessLog::events() const {
  std::lock_guard lock(mutex_);
  return events_;
}

void AccessLog::clear() {
  std::lock_guard lock(mutex_);
  events_.clear();
}

namespace {

struct ViewContext {
  std::shared_ptr<AccessLog> log;
  std::size_t input = 0;
  // When set, bits at positions outside `kept` are flipped.
  std::shared_ptr<const std::set<Ordinal>> kept;
};

using PositionMap = std::function<Ordinal(const Ordinal&)>;

Name view(const Name& p, PositionMap to_root, std::shared_ptr<const ViewContext> ctx) {
  if (p.shape() == Shape::TUPLE) {
    return Name::tuple(
        [p, to_root, ctx](const Ordinal& alpha) {
          return view(p.component(alpha),
                      [to_root, alpha](const Ordinal& beta) { return to_root(godel_pair(alpha, beta)); }, ctx);
        },
        p.budget());
  }
  return Name::program(
      [p, to_root, ctx](const Ordinal& pos) {
        const Ordinal root = to_root(pos);
        if (ctx->log) ctx->log->record({false, ctx->input, root});
        bool b = p.bit_at(pos);
        if (ctx->kept && !ctx->kept->count(root)) b = !b;
        return b;
      },
      p.budget());
}

const PositionMap identity = [](const Ordinal& o) { return o; };

}  // namespace

Name logged_input(const Name& p, std::shared_ptr<AccessLog> log, std::size_t input) {
  auto ctx = std::make_shared<ViewContext>();
  ctx->log = std::move(log);
  ctx->input = input;
  return view(p, identity, ctx);
}

ContinuityReport check_continuity(const Realizer& f, const std::vector<Name>& inputs,
                                  const std::vector<Ordinal>& output_positions) {
  ContinuityReport report;
  for (const Ordinal& pos : output_positions) {
    auto log = std::make_shared<AccessLog>();
    std::vector<Name> logged;
    for (std::size_t i = 0; i < inputs.size(); ++i) logged.push_back(logged_input(inputs[i], log, i));
    const bool bit = f(logged).bit_at(pos);
    log->record({true, 0, pos});

    const auto events = log->events();
    std::vector<std::set<Ordinal>> read(inputs.size());
    for (std::size_t k = 0; k + 1 < events.size(); ++k) {
      if (events[k].output) {
        report.ok = false;
        report.detail = "output event logged before reads finished at position " + pos.str();
        return report;
      }
      read[events[k].input].insert(events[k].position);
    }

    std::vector<Name> perturbed;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      auto ctx = std::make_shared<ViewContext>();
      ctx->input = i;
      ctx->kept = std::make_shared<const std::set<Ordinal>>(read[i]);
      perturbed.push_back(view(inputs[i], identity, ctx));
    }
    bool again;
    try {
      again = f(perturbed).bit_at(pos);
    } catch (const std::exception& e) {
      report.ok = false;
      report.detail = "output bit " + pos.str() + " read beyond its logged prefix: " + e.what();
      return report;
    }
    if (again != bit) {
      report.ok = false;
      report.detail = "output bit " + pos.str() + " changed when unread input bits were flipped";
      return report;
    }
    ++report.checked;
  }
  return report;
}

namespace {

Realizer unary(std::string label, std::function<Name(const Name&)> g) {
  return {std::move(label), 1, [g](const std::vector<Name>& in) { return g(in[0]); }};
}

Realizer binary(std::string label, std::function<Name(const Name&, const Name&)> g) {
  return {std::move(label), 2, [g](const std::vector<Name>& in) { return g(in[0], in[1]); }};
}

}  // namespace

Realizer realizer_sign_to_cut() { return unary("sign_to_cut", sign_to_cut); }
Realizer realizer_cut_to_sign() { return unary("cut_to_sign", cut_to_sign); }
Realizer realizer_r_add() { return binary("r_add", r_add); }
Realizer realizer_r_mul() { return binary("r_mul", r_mul); }
Realizer realizer_veronese_to_cauchy() { return unary("veronese_to_cauchy", veronese_to_cauchy); }
Realizer realizer_cauchy_to_veronese() { return unary("cauchy_to_veronese", cauchy_to_veronese); }
Realizer realizer_rr_add() { return binary("rr_add", rr_add); }
Realizer realizer_rr_neg() { return unary("rr_neg", rr_neg); }
Realizer realizer_rr_mul() { return binary("rr_mul", rr_mul); }
Realizer realizer_rr_inv(std::size_t fuel) {
  return unary("rr_inv", [fuel](const Name& p) { return rr_inv(p, fuel); });
}

}  // namespace rk
