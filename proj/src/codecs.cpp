#include "rk/codecs.hpp"

#include <sstream>

#include "rk/errors.hpp"

namespace rk {

namespace bmp = boost::multiprecision;

std::vector<Ordinal> inspection_indices(const Ordinal& up_to) {
  std::vector<Ordinal> out;
  for (std::uint64_t i = 0; i < 32; ++i)
    if (Ordinal(i) < up_to) out.emplace_back(i);
  for (const Ordinal& l : {Ordinal::omega(), succ(Ordinal::omega())})
    if (l < up_to) out.push_back(l);
  return out;
}

namespace {

const std::vector<Ordinal>& sample_positions() {
  static const std::vector<Ordinal> positions = [] {
    std::vector<Ordinal> v;
    for (std::uint64_t i = 0; i < 64; ++i) v.emplace_back(i);
    for (const char* s : {"w", "w+1", "w+2", "w*2", "w*2+1", "w^2", "w^2+1"}) v.push_back(Ordinal::parse(s));
    return v;
  }();
  return positions;
}

// Lazily defined names carry an annotation naming the value they encode; the
// claim is checked against a fresh encoding on sampled positions.
void verify_against(const Name& actual, const Name& expected, const std::string& what) {
  for (auto& pos : sample_positions()) {
    if (!(pos < actual.budget()) || !(pos < expected.budget())) continue;
    if (actual.bit_at(pos) != expected.bit_at(pos))
      throw InvalidName(what + ": annotation disagrees with bit " + pos.str());
  }
}

// Spot-check read; nullopt where a view maps past its parent's budget.
std::optional<bool> probe(const Name& p, const Ordinal& pos) {
  try {
    return p.bit_at(pos);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

std::string annotation_argument(const Name& p, const std::string& kind) {
  const std::string& a = p.annotation();
  if (a.rfind(kind + ":", 0) != 0) return {};
  return a.substr(kind.size() + 1);
}

}  // namespace

// ---------------------------------------------------------------- delta_kappa

Name delta_kappa_encode(const Ordinal& alpha, std::optional<Ordinal> budget) {
  return Name::explicit_bits({{false, alpha}, {true, Ordinal(1)}}, "0", budget);
}

Ordinal delta_kappa_decode(const Name& p) {
  if (p.shape() == Shape::EXPLICIT) {
    if (p.filler().find('1') != std::string::npos) throw InvalidName("delta_kappa: infinitely many 1s");
    const auto& runs = p.runs();
    Ordinal zeros;
    std::size_t i = 0;
    if (i < runs.size() && !runs[i].bit) zeros = runs[i++].length;
    if (i >= runs.size()) throw InvalidName("delta_kappa: no 1 in the name");
    if (runs[i].length != Ordinal(1) || i + 1 != runs.size())
      throw InvalidName("delta_kappa: more than one 1 in the name");
    return zeros;
  }
  std::optional<std::uint64_t> one;
  for (std::uint64_t n = 0; n < 64 && Ordinal(n) < p.budget(); ++n)
    if (p.bit_at(Ordinal(n))) {
      if (one) throw InvalidName("delta_kappa: more than one 1 in the name");
      one = n;
    }
  if (!one) throw InvalidName("delta_kappa: no 1 found among the inspected bits");
  for (auto& pos : sample_positions())
    if (pos < p.budget() && Ordinal(*one) < pos && probe(p, pos).value_or(false))
      throw InvalidName("delta_kappa: more than one 1 in the name");
  return Ordinal(*one);
}

// ------------------------------------------------------------ delta_kappa^kappa

namespace {

OrdinalFamily normalized(OrdinalFamily f) {
  // Shortest period.
  const std::size_t k = f.cycle.size();
  for (std::size_t d = 1; d < k; ++d) {
    if (k % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; periodic && i < k; ++i) periodic = f.cycle[i] == f.cycle[i - d];
    if (periodic) {
      f.cycle.resize(d);
      break;
    }
  }
  // Absorb prefix entries that continue the cycle backwards.
  while (!f.prefix.empty() && f.prefix.back() == f.cycle.back()) {
    f.cycle.insert(f.cycle.begin(), f.cycle.back());
    f.cycle.pop_back();
    f.prefix.pop_back();
  }
  return f;
}

std::vector<Ordinal> parse_ordinal_list(const std::string& text) {
  std::vector<Ordinal> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(Ordinal::parse(item));
  }
  return out;
}

}  // namespace

Ordinal OrdinalFamily::at(const Ordinal& index) const {
  if (auto n = index.finite_value(); n && *n < prefix.size()) return prefix[*n];
  Ordinal offset = ord_sub(Ordinal(prefix.size()), index);
  return cycle[offset.finite_part() % cycle.size()];
}

std::string OrdinalFamily::str() const {
  std::string out = "[";
  for (std::size_t i = 0; i < prefix.size(); ++i) out += (i ? ", " : "") + prefix[i].str();
  out += "; ";
  for (std::size_t i = 0; i < cycle.size(); ++i) out += (i ? ", " : "") + cycle[i].str();
  return out + "]";
}

OrdinalFamily OrdinalFamily::parse(const std::string& text) {
  auto open = text.find('['), close = text.rfind(']');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ParseError("family '" + text + "': expected [prefix; cycle]");
  std::string body = text.substr(open + 1, close - open - 1);
  auto semi = body.find(';');
  OrdinalFamily f;
  if (semi == std::string::npos) {
    f.prefix = parse_ordinal_list(body);
  } else {
    f.prefix = parse_ordinal_list(body.substr(0, semi));
    f.cycle = parse_ordinal_list(body.substr(semi + 1));
    if (f.cycle.empty()) throw ParseError("family '" + text + "': empty cycle");
  }
  return f;
}

bool operator==(const OrdinalFamily& a, const OrdinalFamily& b) {
  OrdinalFamily na = normalized(a), nb = normalized(b);
  return na.prefix == nb.prefix && na.cycle == nb.cycle;
}

Name delta_kk_encode(const OrdinalFamily& x, std::optional<Ordinal> budget) {
  if (x.cycle.empty()) throw std::invalid_argument("delta_kk_encode: empty cycle");
  std::vector<Name::BitRun> runs;
  for (auto& a : x.prefix) {
    runs.push_back({false, succ(a)});
    runs.push_back({true, Ordinal(1)});
  }
  bool finite_cycle = true;
  for (auto& a : x.cycle) finite_cycle = finite_cycle && a.is_finite() && a.finite_part() < 4096;
  if (finite_cycle) {
    std::string filler;
    for (auto& a : x.cycle) filler += std::string(a.finite_part() + 1, '0') + "1";
    return Name::explicit_bits(std::move(runs), std::move(filler), budget);
  }
  // Transfinite word lengths: locate the word containing a position by ordinal
  // division of the offset by the length of one cycle of words.
  Ordinal prefix_len, cycle_len;
  for (auto& a : x.prefix) prefix_len = ord_add(prefix_len, ord_add(a, Ordinal(2)));
  for (auto& a : x.cycle) cycle_len = ord_add(cycle_len, ord_add(a, Ordinal(2)));
  auto word_bit = [](const std::vector<Ordinal>& words, Ordinal offset) {
    for (auto& a : words) {
      Ordinal len = ord_add(a, Ordinal(2));
      if (offset < len) return offset == succ(a);
      offset = ord_sub(len, offset);
    }
    return false;
  };
  auto prefix = x.prefix;
  auto cycle = x.cycle;
  return Name::program(
      [=](const Ordinal& pos) {
        if (pos < prefix_len) return word_bit(prefix, pos);
        Ordinal off = ord_sub(prefix_len, pos);
        Ordinal q = greatest_satisfying([&](const Ordinal& k) { return ord_mul(cycle_len, k) <= off; }, off);
        return word_bit(cycle, ord_sub(ord_mul(cycle_len, q), off));
      },
      budget, "kk:" + x.str());
}

OrdinalFamily delta_kk_decode(const Name& p) {
  if (p.shape() != Shape::EXPLICIT) {
    std::string arg = annotation_argument(p, "kk");
    if (arg.empty()) throw InvalidName("delta_kk: cannot decode a lazily defined name without annotation");
    OrdinalFamily f = OrdinalFamily::parse(arg);
    verify_against(p, delta_kk_encode(f, p.budget()), "delta_kk");
    return normalized(f);
  }
  OrdinalFamily f;
  Ordinal pending;  // zeros of the word being read
  auto close_word = [&](const Ordinal& zeros) {
    if (zeros.is_zero()) throw InvalidName("delta_kk: word without leading zeros");
    if (zeros.is_limit()) throw InvalidName("delta_kk: word with a limit number of zeros");
    return pred(zeros);
  };
  for (auto& r : p.runs()) {
    if (!r.bit) {
      pending = ord_add(pending, r.length);
      continue;
    }
    f.prefix.push_back(close_word(pending));
    pending = Ordinal();
    if (r.length != Ordinal(1)) throw InvalidName("delta_kk: word without leading zeros");
  }
  const std::string& filler = p.filler();
  const auto first_one = filler.find('1');
  if (first_one == std::string::npos) throw InvalidName("delta_kk: unterminated word");
  f.prefix.push_back(close_word(ord_add(pending, Ordinal(first_one))));
  const std::string rotated = filler.substr(first_one + 1) + filler.substr(0, first_one + 1);
  f.cycle.clear();
  std::uint64_t zeros = 0;
  for (char c : rotated) {
    if (c == '0') {
      ++zeros;
      continue;
    }
    f.cycle.push_back(close_word(Ordinal(zeros)));
    zeros = 0;
  }
  return normalized(f);
}

// ------------------------------------------------------------------------ Raz

Name raz_encode(const SignSequence& q, std::optional<Ordinal> budget) {
  std::vector<Name::BitRun> runs;
  for (auto& r : q.runs()) runs.push_back({r.sign == Sign::PLUS, ord_mul(Ordinal(2), r.length)});
  return Name::explicit_bits(std::move(runs), "01", budget);
}

namespace {

struct RazReader {
  std::vector<SignSequence::Run> signs;
  bool ended = false;

  void words(bool a, bool b, const Ordinal& count) {
    if (a && !b) throw InvalidName("raz: word 10");
    if (!a && b) {
      ended = true;
      return;
    }
    if (ended) throw InvalidName("raz: sign word after the end marker 01");
    signs.push_back({a ? Sign::PLUS : Sign::MINUS, count});
  }
};

}  // namespace

SignSequence raz_decode(const Name& p) {
  RazReader reader;
  if (p.shape() == Shape::EXPLICIT) {
    std::optional<bool> carry;
    for (auto& r : p.runs()) {
      Ordinal rem = r.length;
      if (carry) {
        reader.words(*carry, r.bit, Ordinal(1));
        carry.reset();
        rem = ord_sub(Ordinal(1), rem);
      }
      FiniteDivision d = div_finite(rem, 2);
      if (!d.quotient.is_zero()) reader.words(r.bit, r.bit, d.quotient);
      if (d.remainder == 1) carry = r.bit;
    }
    std::string f = p.filler();
    if (carry) {
      reader.words(*carry, f[0] == '1', Ordinal(1));
      f = f.substr(1) + f[0];
    }
    if (f.size() % 2 == 1) f += f;
    for (std::size_t i = 0; i < f.size(); i += 2) {
      if (f[i] == '1' && f[i + 1] == '0') throw InvalidName("raz: word 10");
      if (!(f[i] == '0' && f[i + 1] == '1'))
        throw InvalidName("raz: sign words never end (length kappa)");
    }
    return SignSequence::from_runs(std::move(reader.signs));
  }
  if (std::string arg = annotation_argument(p, "raz"); !arg.empty()) {
    SignSequence q = SignSequence::parse(arg);
    verify_against(p, raz_encode(q, p.budget()), "raz");
    return q;
  }
  // Lazily defined: read words at finite indices until the end marker, then
  // spot-check that it persists.
  auto word = [&](const Ordinal& i) {
    Ordinal at = ord_mul(Ordinal(2), i);
    return std::pair<bool, bool>{p.bit_at(at), p.bit_at(succ(at))};
  };
  std::uint64_t i = 0;
  for (; i < 64 && !reader.ended; ++i) {
    auto [a, b] = word(Ordinal(i));
    reader.words(a, b, Ordinal(1));
  }
  if (!reader.ended) throw InvalidName("raz: no end marker among the inspected words");
  // Spot checks skip positions a view cannot reach within its parent's budget.
  auto check = [&](const Ordinal& w) {
    try {
      auto [a, b] = word(w);
      reader.words(a, b, Ordinal(1));
    } catch (const BudgetExceeded&) {
    }
  };
  for (std::uint64_t j = i; j < i + 32; ++j) {
    if (!(ord_mul(Ordinal(2), Ordinal(j + 1)) <= p.budget())) break;
    check(Ordinal(j));
  }
  for (const Ordinal& l : {Ordinal::omega(), succ(Ordinal::omega())})
    if (succ(ord_mul(Ordinal(2), l)) < p.budget()) check(l);
  return SignSequence::from_runs(std::move(reader.signs));
}

// ------------------------------------------------------------------------ Cut

namespace {

// The i-th position (in increasing order) of q carrying sign s.
std::optional<Ordinal> nth_position(const SignSequence& q, Sign s, const Ordinal& i) {
  Ordinal counted, start;
  for (auto& r : q.runs()) {
    if (r.sign == s) {
      Ordinal d = ord_sub(counted, i);
      if (d < r.length) return ord_add(start, d);
      counted = ord_add(counted, r.length);
    }
    start = ord_add(start, r.length);
  }
  return std::nullopt;
}

void register_factories();

}  // namespace

Name cut_encode(const SignSequence& q, std::optional<Ordinal> budget) {
  register_factories();
  const Name hole = Name::placeholder(budget);
  if (q.is_finite()) {
    const Cut c = canonical_cut(q);
    const std::size_t n = std::max(c.left.size(), c.right.size());
    std::vector<Name> listed;
    for (std::size_t i = 0; i < n; ++i) {
      listed.push_back(i < c.left.size() ? cut_encode(c.left[i], budget) : hole);
      listed.push_back(i < c.right.size() ? cut_encode(c.right[i], budget) : hole);
    }
    return Name::tuple_listed(std::move(listed), hole, budget);
  }
  return Name::tuple(
      [q, budget, hole](const Ordinal& alpha) {
        const bool even = is_even(alpha);
        const Ordinal i = even_index(even ? alpha : pred(alpha));
        auto pos = nth_position(q, even ? Sign::PLUS : Sign::MINUS, i);
        return pos ? cut_encode(q.prefix(*pos), budget) : hole;
      },
      budget, "cut:" + q.str());
}

bool is_lazy_cut(const Name& p) { return !annotation_argument(p, "cut").empty(); }

Cut cut_options(const Name& p, const std::function<SignSequence(const Name&)>& decode) {
  std::vector<Name> comps;
  std::optional<Name> rest;
  if (auto listed = p.listed_components()) {
    comps = *listed;
    rest = *p.rest_component();
    if (!rest->is_placeholder()) throw InvalidName("cut: infinitely many options repeat one component");
  } else {
    for (std::uint64_t i = 0; i < 64; ++i) comps.push_back(p.component(Ordinal(i)));
  }
  // Placeholders must form a terminal block within each parity class.
  std::optional<std::size_t> first_hole[2];
  std::vector<SignSequence> sides[2];
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const int cls = static_cast<int>(i % 2);
    if (comps[i].is_placeholder()) {
      if (!first_hole[cls]) first_hole[cls] = i;
      continue;
    }
    if (first_hole[cls]) throw InvalidName("cut: option after a placeholder at index " + std::to_string(i));
    sides[cls].push_back(decode(comps[i]));
  }
  if (!rest) {
    if (!first_hole[0] || !first_hole[1])
      throw InvalidName("cut: cannot certify a finite option set from the inspected components");
    for (const Ordinal& l : {Ordinal::omega(), succ(Ordinal::omega())})
      if (!p.component(l).is_placeholder()) throw InvalidName("cut: option after a placeholder at " + l.str());
  }
  return {std::move(sides[0]), std::move(sides[1])};
}

SignSequence cut_decode(const Name& p, int rank_budget) {
  if (rank_budget <= 0) throw InvalidName("cut: recursion exceeds the rank budget");
  if (std::string arg = annotation_argument(p, "cut"); !arg.empty()) {
    SignSequence q = SignSequence::parse(arg);
    Name expected = cut_encode(q, p.budget());
    for (auto& alpha : inspection_indices(ord_mul(Ordinal::omega(), Ordinal(2))))
      verify_against(p.component(alpha), expected.component(alpha), "cut component " + alpha.str());
    return q;
  }
  Cut c = cut_options(p, [rank_budget](const Name& o) { return cut_decode(o, rank_budget - 1); });
  try {
    return simplest_between(c);
  } catch (const MalformedCut& e) {
    throw InvalidName(std::string("cut: options are not separated: ") + e.what());
  }
}

// ------------------------------------------------------------- kappa-rationals

Name krational_encode(const KRational& q, std::optional<Ordinal> budget) {
  if (q.has_sign_sequence()) return raz_encode(q.to_sign_sequence(), budget);
  std::vector<Name> listed{Name::placeholder(budget), delta_kappa_encode(q.den(), budget),
                           delta_kappa_encode(Ordinal(q.num().terms().size()), budget)};
  for (auto& [e, c] : q.num().terms()) {
    const Integer& d = bmp::denominator(c);
    if (d > Integer(std::numeric_limits<std::uint64_t>::max()))
      throw BudgetExceeded("coefficient denominator too large to encode");
    listed.push_back(delta_kappa_encode(e, budget));
    listed.push_back(raz_encode(from_dyadic(Rational(bmp::numerator(c))), budget));
    listed.push_back(delta_kappa_encode(Ordinal(static_cast<std::uint64_t>(d)), budget));
  }
  return Name::tuple_listed(std::move(listed), Name::placeholder(budget), budget);
}

KRational krational_decode(const Name& p) {
  if (!(p.bit_at(Ordinal(0)) && !p.bit_at(Ordinal(1))))
    return KRational::from_sign_sequence(raz_decode(p));
  const Ordinal den = delta_kappa_decode(p.component(Ordinal(1)));
  auto k = delta_kappa_decode(p.component(Ordinal(2))).finite_value();
  if (!k || *k > 1024) throw InvalidName("krational: bad term count");
  OmegaPoly num;
  for (std::uint64_t i = 0; i < *k; ++i) {
    const Ordinal e = delta_kappa_decode(p.component(Ordinal(3 + 3 * i)));
    auto n = to_fraction(raz_decode(p.component(Ordinal(4 + 3 * i))));
    auto d = delta_kappa_decode(p.component(Ordinal(5 + 3 * i))).finite_value();
    if (!n || bmp::denominator(*n) != 1 || !d || *d == 0) throw InvalidName("krational: bad coefficient");
    num = num + OmegaPoly::from_ordinal(Ordinal::omega_power(e)) * OmegaPoly(*n / Rational(*d));
  }
  if (den.is_zero()) throw InvalidName("krational: zero denominator");
  return KRational(num, den);
}

// ----------------------------------------------------------------------- reals

Name rk_cauchy_encode(const KRational& x, std::optional<Ordinal> budget) {
  return Name::tuple_listed({}, krational_encode(x, budget), budget);
}

Name rk_cauchy_encode(const SignSequence& x, std::optional<Ordinal> budget) {
  return Name::tuple_listed({}, raz_encode(x, budget), budget);
}

Name real_name(std::function<KRational(const Ordinal&)> approximants, std::optional<Ordinal> budget,
               std::string annotation) {
  return Name::tuple(
      [approximants = std::move(approximants), budget](const Ordinal& a) {
        return krational_encode(approximants(a), budget);
      },
      budget, std::move(annotation));
}

CheckResult rk_cauchy_check(const Name& p, const KRational& x, const Ordinal& up_to) {
  for (auto& a : inspection_indices(up_to)) {
    KRational q = krational_decode(p.component(a));
    if (!below_plus(q, x, a) || !below_plus(x, q, a))
      return {false, a, "approximant " + q.str() + " is not within 1/(" + succ(a).str() + ") of " + x.str()};
  }
  return {};
}

CheckResult rk_veronese_check(const Name& p, const Ordinal& up_to) {
  for (auto& a : inspection_indices(up_to)) {
    if (!is_even(a)) continue;
    KRational lo = krational_decode(p.component(a));
    KRational hi = krational_decode(p.component(succ(a)));
    if (!below_plus(hi, lo, a))
      return {false, a, "gap " + (hi - lo).str() + " is not below 1/(" + succ(a).str() + ")"};
  }
  return {};
}

namespace {

void register_factories() {
  static const bool done = [] {
    Name::register_factory("cut", [](const std::string& arg, const Ordinal& budget) {
      return cut_encode(SignSequence::parse(arg), budget);
    });
    Name::register_factory("kk", [](const std::string& arg, const Ordinal& budget) {
      return delta_kk_encode(OrdinalFamily::parse(arg), budget);
    });
    return true;
  }();
  (void)done;
}

const bool kFactoriesRegistered = (register_factories(), true);

}  // namespace

void register_codec_factories() { register_factories(); }

}  // namespace rk
