// Acceptance run: one pass/fail line per criterion. Every expected value is
// computed on the test side (dyadic walk, brute-force search, CNF merge,
// direct polynomial evaluation); the library only supplies the values under
// test. Exit status is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "rk/codecs.hpp"
#include "rk/errors.hpp"
#include "rk/machine.hpp"
#include "rk/reductions.hpp"
#include "rk/surreal.hpp"
#include "rk/weihrauch.hpp"
#include "test_support.hpp"

using namespace rk;
using rk::testing::BigRational;
using rk::testing::dyadic_of;
using rk::testing::ord;
using rk::testing::sign_string;
using rk::testing::sign_strings_up_to;

namespace {

struct Failure {
  std::string what;
};

// Collects the first few failures; a criterion passes when there are none.
class Checker {
 public:
  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks_;
    if (!ok && failures_.size() < 3) failures_.push_back(what());
    if (!ok) ++failed_;
  }
  std::size_t checks() const { return checks_; }
  std::size_t failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

SignSequence ss(const std::string& s) { return SignSequence::parse(s.empty() ? "0" : s); }

BigRational as_big(const Rational& q) { return BigRational(q); }

// The approximant at a finite index, which must be an ordinary rational.
std::optional<Rational> finite_approximant(const Name& p, std::uint64_t a) {
  return approximant(p, Ordinal(a)).as_rational();
}

// |x - y| * (a + 1) < 1, cross-multiplied.
bool close(const Rational& x, const Rational& y, std::uint64_t a) {
  Rational d = x - y;
  if (d < 0) d = -d;
  return d * Rational(a + 1) < 1;
}

// -------------------------------------------------------------------- 1

void surreal_oracle(Checker& c) {
  const auto all = sign_strings_up_to(5);
  for (auto& a : all) {
    auto neg = to_fraction(s_neg(ss(a)));
    c.expect(neg && as_big(*neg) == -dyadic_of(a), [&] { return "neg " + a; });
    for (auto& b : all) {
      auto sum = to_fraction(s_add(ss(a), ss(b)));
      c.expect(sum && as_big(*sum) == dyadic_of(a) + dyadic_of(b), [&] { return a + " + " + b; });
      auto prod = to_fraction(s_mul(ss(a), ss(b)));
      c.expect(prod && as_big(*prod) == dyadic_of(a) * dyadic_of(b), [&] { return a + " * " + b; });
    }
  }
}

// -------------------------------------------------------------------- 2

void simplicity(Checker& c) {
  for (auto& s : sign_strings_up_to(7))
    c.expect(simplest_between(canonical_cut(ss(s))) == ss(s), [&] { return "round trip " + s; });

  // Universe sorted by value; the brute-force answer for each pair of
  // extremes, found by scanning candidates by length, then in enumeration order.
  auto universe = sign_strings_up_to(4);
  std::sort(universe.begin(), universe.end(),
            [](auto& x, auto& y) { return dyadic_of(x) < dyadic_of(y); });
  const std::size_t n = universe.size();
  const auto candidates = sign_strings_up_to(7);
  std::map<std::pair<std::size_t, std::size_t>, std::string> brute;
  auto oracle = [&](std::size_t lo, std::size_t hi) -> const std::string& {
    auto key = std::make_pair(lo, hi);
    auto it = brute.find(key);
    if (it != brute.end()) return it->second;
    for (auto& cand : candidates) {
      const BigRational v = dyadic_of(cand);
      if ((lo == n || dyadic_of(universe[lo]) < v) && (hi == n || v < dyadic_of(universe[hi])))
        return brute[key] = cand;
    }
    throw Failure{"no candidate"};
  };

  // Option sets of at most two elements per side.
  std::vector<std::vector<std::size_t>> sets{{}};
  for (std::size_t i = 0; i < n; ++i) {
    sets.push_back({i});
    for (std::size_t j = i + 1; j < n; ++j) sets.push_back({i, j});
  }
  auto run = [&](const std::vector<std::size_t>& L, const std::vector<std::size_t>& R) {
    const std::size_t lo = L.empty() ? n : L.back();
    const std::size_t hi = R.empty() ? n : R.front();
    if (!L.empty() && !R.empty() && lo >= hi) return;
    Cut cut;
    for (auto i : L) cut.left.push_back(ss(universe[i]));
    for (auto i : R) cut.right.push_back(ss(universe[i]));
    const std::string& want = oracle(lo, hi);
    c.expect(simplest_between(cut) == ss(want), [&] { return "cut with answer " + want; });
  };
  for (auto& L : sets)
    for (auto& R : sets) run(L, R);
  // And the largest cut for each pair of extremes: everything below, everything above.
  for (std::size_t lo = 0; lo <= n; ++lo)
    for (std::size_t hi = 0; hi <= n; ++hi) {
      if (lo != n && hi != n && lo >= hi) continue;
      std::vector<std::size_t> L, R;
      if (lo != n)
        for (std::size_t i = 0; i <= lo; ++i) L.push_back(i);
      if (hi != n)
        for (std::size_t i = hi; i < n; ++i) R.push_back(i);
      run(L, R);
    }
}

// -------------------------------------------------------------------- 3

// Hessenberg operations by merging Cantor normal forms.
using Cnf = std::map<Ordinal, std::uint64_t, std::greater<>>;

Cnf cnf(const Ordinal& a) {
  Cnf out;
  for (auto& t : a.terms()) out[t.exponent] += t.coefficient;
  return out;
}

Ordinal from_cnf(const Cnf& m) {
  std::vector<Ordinal::Term> terms;
  for (auto& [e, c] : m)
    if (c) terms.push_back({e, c});
  return Ordinal::from_terms(std::move(terms));
}

Ordinal oracle_sum(const Ordinal& a, const Ordinal& b) {
  Cnf m = cnf(a);
  for (auto& [e, c] : cnf(b)) m[e] += c;
  return from_cnf(m);
}

Ordinal oracle_product(const Ordinal& a, const Ordinal& b) {
  Cnf m;
  for (auto& [ea, ca] : cnf(a))
    for (auto& [eb, cb] : cnf(b)) m[oracle_sum(ea, eb)] += ca * cb;
  return from_cnf(m);
}

void hessenberg(Checker& c) {
  std::mt19937_64 rng(2024);
  std::vector<Ordinal> sample;
  for (int i = 0; i < 200; ++i) sample.push_back(rk::testing::random_ordinal(rng));
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const Ordinal& a = sample[i];
    const Ordinal& b = sample[(i * 7 + 3) % sample.size()];
    const Ordinal& d = sample[(i * 13 + 5) % sample.size()];
    auto tag = [&] { return a.str() + ", " + b.str() + ", " + d.str(); };
    c.expect(nat_add(a, b) == oracle_sum(a, b), tag);
    c.expect(nat_mul(a, b) == oracle_product(a, b), tag);
    c.expect(nat_add(a, b) == nat_add(b, a), tag);
    c.expect(nat_mul(a, b) == nat_mul(b, a), tag);
    c.expect(nat_add(nat_add(a, b), d) == nat_add(a, nat_add(b, d)), tag);
    c.expect(nat_mul(nat_mul(a, b), d) == nat_mul(a, nat_mul(b, d)), tag);
    if (b < d) {
      c.expect(nat_add(a, b) < nat_add(a, d), tag);
      if (!a.is_zero()) c.expect(nat_mul(a, b) < nat_mul(a, d), tag);
    }
    for (std::uint64_t k : {0u, 1u, 2u, 7u}) {
      c.expect(nat_add(a, Ordinal(k)) == ord_add(a, Ordinal(k)), [&] { return a.str() + " +_s " + std::to_string(k); });
      c.expect(s_add(SignSequence::ordinal(a), SignSequence::ordinal(Ordinal(k))) ==
                   SignSequence::ordinal(ord_add(a, Ordinal(k))),
               [&] { return "surreal " + a.str() + " + " + std::to_string(k); });
    }
  }
}

// -------------------------------------------------------------------- 4

void pairing(Checker& c) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (std::uint64_t a = 0; a <= 100; ++a)
    for (std::uint64_t b = 0; b <= 100; ++b) pairs.emplace_back(a, b);
  std::sort(pairs.begin(), pairs.end(), [](auto x, auto y) {
    return rk::testing::godel_precedes(Ordinal(x.first), Ordinal(x.second), Ordinal(y.first), Ordinal(y.second));
  });
  for (std::uint64_t i = 0; i < 10000; ++i) {
    auto [a, b] = pairs[i];
    c.expect(godel_pair(Ordinal(a), Ordinal(b)) == Ordinal(i), [&] { return "pair code " + std::to_string(i); });
    auto [ua, ub] = godel_unpair(Ordinal(i));
    c.expect(ua == Ordinal(a) && ub == Ordinal(b), [&] { return "unpair " + std::to_string(i); });
  }
  std::mt19937_64 rng(99);
  std::vector<std::pair<Ordinal, Ordinal>> sample;
  while (sample.size() < 100) {
    Ordinal a = rk::testing::random_ordinal(rng), b = rk::testing::random_ordinal(rng);
    if (a.is_finite() && b.is_finite()) continue;
    sample.emplace_back(a, b);
  }
  for (auto& [a, b] : sample) {
    auto [ua, ub] = godel_unpair(godel_pair(a, b));
    c.expect(ua == a && ub == b, [&] { return "(" + a.str() + ", " + b.str() + ")"; });
  }
  for (auto& [a0, b0] : sample)
    for (auto& [a1, b1] : sample)
      c.expect(rk::testing::godel_precedes(a0, b0, a1, b1) == (godel_pair(a0, b0) < godel_pair(a1, b1)),
               [&] { return "order of (" + a0.str() + "," + b0.str() + ") (" + a1.str() + "," + b1.str() + ")"; });
}

// -------------------------------------------------------------------- 5

std::vector<SignSequence> sign_corpus() {
  std::vector<SignSequence> out;
  for (auto& s : sign_strings_up_to(5)) out.push_back(ss(s));
  for (const char* s : {"(+)^w", "(+)^(w+1)", "(+)^(w*2)", "(-)^w", "(-)^(w+1)+", "+(-)^w", "(+)^w-",
                        "(+)^w-(+)^(w+1)", "-+(-)^(w*2)+-", "(+)^(w*2+1)(-)^w"})
    out.push_back(SignSequence::parse(s));
  return out;
}

void codecs(Checker& c) {
  for (std::uint64_t k = 0; k < 12; ++k)
    for (std::uint64_t m = 0; m <= 3; ++m) {
      const Ordinal a = ord_add(ord_mul(Ordinal::omega(), Ordinal(m)), Ordinal(k));
      c.expect(delta_kappa_decode(delta_kappa_encode(a)) == a, [&] { return "delta_kappa " + a.str(); });
    }
  for (const char* s : {"[; 0]", "[; 3]", "[0, 1, 2; 5]", "[w; 0]", "[w+1, w*2, 3; 1, 2]", "[; 1, 0, 2]",
                        "[w*3+2; 4]", "[1; w]", "[; w, 0]", "[2; w+1, w^2]", "[w, w+1, w*2; w]"}) {
    const OrdinalFamily x = OrdinalFamily::parse(s);
    c.expect(delta_kk_decode(delta_kk_encode(x)) == x, [&] { return std::string("delta_kk ") + s; });
  }
  for (auto& q : sign_corpus()) {
    c.expect(raz_decode(raz_encode(q)) == q, [&] { return "raz " + q.str(); });
    c.expect(cut_decode(cut_encode(q)) == q, [&] { return "cut " + q.str(); });
  }
  // Bits at the landmarks are where the transfinite codes say they are.
  const Name w = raz_encode(SignSequence::ordinal(ord("w")));
  c.expect(!w.bit_at(ord("w")) && w.bit_at(ord("w+1")), [] { return "raz landmark w"; });
  const Name k = delta_kappa_encode(ord("w*2"));
  c.expect(k.bit_at(ord("w*2")) && !k.bit_at(ord("w")) && !k.bit_at(ord("w+1")), [] { return "delta_kappa w*2"; });
}

// -------------------------------------------------------------------- 6

// x_a = v + 1/(2(a+1)): a non-constant Cauchy name of v.
Name drifting(const KRational& v) {
  return real_name([v](const Ordinal& a) { return v + unit_fraction(a) * KRational(Rational(1, 2)); });
}

std::vector<Rational> value_corpus() {
  std::vector<Rational> out;
  for (auto& s : sign_strings_up_to(3)) out.push_back(Rational(dyadic_of(s)));
  for (auto q : {Rational(1, 3), Rational(-7, 12), Rational(22, 7)}) out.push_back(q);
  return out;
}

// Cross-multiplied check of |x_a - v| < 1/(a+1) at every finite a < 32 and,
// exactly in the library's arithmetic, at w and w+1.
void cauchy_bounds(Checker& c, const Name& p, const Rational& v, const std::string& tag) {
  for (std::uint64_t a = 0; a < 32; ++a) {
    auto x = finite_approximant(p, a);
    c.expect(x && close(*x, v, a), [&] { return tag + " at " + std::to_string(a); });
  }
  for (const char* a : {"w", "w+1"}) {
    const KRational x = approximant(p, ord(a));
    const KRational gap = (x - KRational(v)) * KRational::from_ordinal(succ(ord(a)));
    c.expect(gap < KRational(Rational(1)) && KRational(Rational(-1)) < gap, [&] { return tag + " at " + a; });
  }
}

void veronese_gaps(Checker& c, const Name& p, const std::string& tag) {
  for (std::uint64_t a = 0; a < 32; a += 2) {
    auto lo = finite_approximant(p, a), hi = finite_approximant(p, a + 1);
    c.expect(lo && hi && *lo <= *hi && (*hi - *lo) * Rational(a + 1) < 1,
             [&] { return tag + " gap at " + std::to_string(a); });
  }
  const KRational lo = approximant(p, ord("w")), hi = approximant(p, ord("w+1"));
  c.expect(lo <= hi && (hi - lo) * KRational::from_ordinal(ord("w+1")) < KRational(Rational(1)),
           [&] { return tag + " gap at w"; });
}

void reduction_soundness(Checker& c) {
  for (auto& q : sign_corpus()) {
    const Name raz = raz_encode(q);
    c.expect(cut_decode(sign_to_cut(raz)) == q, [&] { return "sign->cut " + q.str(); });
    if (q.is_finite())
      c.expect(raz_decode(cut_to_sign(cut_encode(q))) == q, [&] { return "cut->sign " + q.str(); });
  }
  for (const char* s : {"(+)^w", "(+)^w-", "(-)^(w+1)+", "+(-)^w"}) {
    const SignSequence q = SignSequence::parse(s);
    c.expect(raz_decode(cut_to_sign(sign_to_cut(raz_encode(q)))) == q, [&] { return std::string("round trip ") + s; });
  }
  for (auto& v : value_corpus()) {
    for (bool drift : {false, true}) {
      const Name p = drift ? drifting(KRational(v)) : rk_cauchy_encode(KRational(v));
      const std::string tag = (drift ? "drifting " : "") + rational_str(v);
      cauchy_bounds(c, p, v, tag + " (input)");
      const Name ver = cauchy_to_veronese(p);
      veronese_gaps(c, ver, tag + " cauchy->veronese");
      // The value is still v: the brackets contain it.
      for (std::uint64_t a = 0; a < 32; a += 2) {
        auto lo = finite_approximant(ver, a), hi = finite_approximant(ver, a + 1);
        c.expect(lo && hi && *lo <= v && v <= *hi, [&] { return tag + " bracket at " + std::to_string(a); });
      }
      cauchy_bounds(c, veronese_to_cauchy(ver), v, tag + " veronese->cauchy");
    }
  }
}

// -------------------------------------------------------------------- 7

void field_realizers(Checker& c) {
  std::vector<Rational> corpus;
  for (auto& s : sign_strings_up_to(3)) corpus.push_back(Rational(dyadic_of(s)));
  for (auto& x : corpus)
    for (auto& y : corpus) {
      const std::string tag = rational_str(x) + ", " + rational_str(y);
      const Name px = drifting(KRational(x)), py = rk_cauchy_encode(KRational(y));
      const Name sum = rr_add(px, py), prod = rr_mul(px, py);
      for (std::uint64_t a = 0; a < 32; ++a) {
        auto s = finite_approximant(sum, a);
        c.expect(s && close(*s, x + y, a), [&] { return "add " + tag + " at " + std::to_string(a); });
        auto m = finite_approximant(prod, a);
        c.expect(m && close(*m, x * y, a), [&] { return "mul " + tag + " at " + std::to_string(a); });
      }
    }
  for (auto& x : corpus) {
    if (x == 0) continue;
    for (bool drift : {false, true}) {
      const Name inv = rr_inv(drift ? drifting(KRational(x)) : rk_cauchy_encode(KRational(x)));
      for (std::uint64_t a = 0; a < 32; ++a) {
        auto r = finite_approximant(inv, a);
        c.expect(r && close(*r, 1 / x, a), [&] { return "inv " + rational_str(x) + " at " + std::to_string(a); });
      }
    }
  }
}

// -------------------------------------------------------------------- 8

// f evaluated directly from its defining expression.
Rational cubic(const Rational& x) { return (4 * x - 1) * (4 * x - 3) * (2 * x - 1) / 8; }

void ivt(Checker& c) {
  const char* kCubic = "(4x-1)(4x-3)(2x-1)/8";
  for (const char* p : {"x-1/2", "x^2-1/4"}) {
    const Name x = ivt_solve(polynomial_function(Polynomial::parse(p)), SignSequence());
    for (std::uint64_t a = 0; a <= 32; ++a) {
      auto v = finite_approximant(x, a);
      c.expect(v && close(*v, Rational(1, 2), a), [&] { return std::string(p) + " at " + std::to_string(a); });
    }
  }
  const Name x = ivt_solve(polynomial_function(Polynomial::parse(kCubic)), SignSequence());
  for (std::uint64_t a = 0; a <= 32; ++a) {
    auto v = finite_approximant(x, a);
    c.expect(v && close(cubic(*v), Rational(0), a) && Rational(0) <= *v && *v <= 1,
             [&] { return "cubic at " + std::to_string(a); });
  }

  const std::vector<std::pair<const char*, std::function<Rational(const Rational&)>>> fs = {
      {"x-1/2", [](const Rational& v) { return v - Rational(1, 2); }},
      {"x^2-1/4", [](const Rational& v) { return v * v - Rational(1, 4); }},
      {kCubic, cubic},
      {"x^3 + x - 1/3", [](const Rational& v) { return v * v * v + v - Rational(1, 3); }}};
  for (auto& [text, f] : fs) {
    const IvtStages st = ivt_stages(polynomial_function(Polynomial::parse(text)), SignSequence(), 60, 100000);
    c.expect(st.lower.size() == 60 && st.upper.size() == 60, [&] { return std::string(text) + " stage count"; });
    Rational prev_l = -1, prev_u = 2;
    for (std::size_t i = 0; i < st.lower.size(); ++i) {
      const Rational l(dyadic_of(sign_string(st.lower[i]))), u(dyadic_of(sign_string(st.upper[i])));
      c.expect(f(l) < 0 && f(u) > 0 && 0 <= l && l < u && u <= 1 && prev_l <= l && u <= prev_u,
               [&, i] { return std::string(text) + " stage " + std::to_string(i); });
      prev_l = l;
      prev_u = u;
    }
  }
}

// -------------------------------------------------------------------- 9

void strong_reduction(Checker& c) {
  std::vector<Sample> samples;
  for (const char* p : {"x-1/2", "x^2-1/4", "(4x-1)(4x-3)(2x-1)/8", "x^3 + x - 1/3"})
    samples.push_back({{fn_encode(polynomial_function(Polynomial::parse(p)))}, {}, p});
  const auto idx = finite_indices(33);
  const CheckReport report = check_strong_reduction(realizer_identity(), realizer_ivt_to_bi(SignSequence()),
                                                    realizer_bi_solve(), ivt_multifunction(), samples, idx);
  c.expect(report.ok && report.checked == samples.size() * idx.size(),
           [&] { return report.failures.empty() ? "check count" : report.failures[0]; });

  auto dy = [](long n, long d) { return from_dyadic(Rational(n, d)); };
  struct Case {
    BIInstance inst;
    Rational lo, hi;
  };
  const std::vector<Case> cases = {
      {BIInstance::from_lists({dy(0, 1)}, {dy(1, 1)}), Rational(0), Rational(1)},
      {BIInstance::from_lists({dy(0, 1), dy(1, 8), dy(1, 4)}, {dy(1, 1), dy(3, 4)}), Rational(1, 4), Rational(3, 4)},
      {BIInstance::from_lists({dy(1, 4), dy(1, 2)}, {dy(1, 1), dy(1, 2)}), Rational(1, 2), Rational(1, 2)},
      {BIInstance::from_lists({dy(-1, 1), dy(3, 8)}, {dy(2, 1), dy(5, 8), dy(5, 8)}), Rational(3, 8), Rational(5, 8)},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto& [inst, lo, hi] = cases[i];
    const auto f = fn_decode(fn_encode(bi_to_ivt(inst)));
    for (int k = -16; k <= 80; ++k) {
      const Rational x(k, 64);
      const bool admissible = lo <= x && x <= hi;
      c.expect(f(KRational(x)).is_zero() == admissible, [&, k] {
        return "instance " + std::to_string(i) + " at " + rational_str(x);
      });
    }
  }
}

// -------------------------------------------------------------------- 10

Program load(const std::string& name) {
  std::ifstream in(std::string(RK_PROGRAM_DIR) + "/" + name + ".tm");
  std::stringstream buf;
  buf << in.rdbuf();
  return Program::parse(buf.str());
}

Name bits(const std::string& prefix) {
  std::vector<Name::BitRun> runs;
  for (char b : prefix) runs.push_back({b == '1', Ordinal(1)});
  return Name::explicit_bits(runs, "0");
}

std::set<Ordinal> cells(std::initializer_list<std::uint64_t> xs) {
  std::set<Ordinal> out;
  for (auto x : xs) out.insert(Ordinal(x));
  return out;
}

void machine(Checker& c) {
  for (const char* in : {"101", "0110", "1", "11100101"}) {
    const std::string s(in);
    c.expect(t2_output(load("copier"), {bits(s), std::nullopt}, s.size(), 1000) == s, [&] { return "copier " + s; });
    c.expect(t2_output(load("echo"), {std::nullopt, bits(s)}, s.size(), 1000) == s, [&] { return "echo " + s; });
  }
  // Hand computation for the oscillator: the cycle a@3{4} b@4{3,4} c@3{3,4}
  // d@4{4} has liminf state c (least in the order s0 s1 s2 c a b d), head 3
  // and only cell 4 set throughout.
  const Program p = load("oscillator");
  const Configuration w = advance_to_limit(Configuration::initial(p), p, {}, 100);
  c.expect(w.stage == Ordinal::omega() && w.state == p.state_index("c") && w.heads[0] == Ordinal(3) &&
               w.ones[0] == cells({4}),
           [] { return "oscillator at w"; });
  struct Expect {
    const char* state;
    std::uint64_t head;
    std::set<Ordinal> ones;
  };
  const std::vector<Expect> after = {
      {"d", 4, cells({4})}, {"a", 3, cells({4})}, {"b", 4, cells({3, 4})}, {"c", 3, cells({3, 4})}};
  Configuration cur = w;
  for (std::size_t k = 0; k < after.size(); ++k) {
    cur = step(cur, p, {});
    c.expect(cur.stage == ord_add(Ordinal::omega(), Ordinal(k + 1)) && cur.state == p.state_index(after[k].state) &&
                 cur.heads[0] == Ordinal(after[k].head) && cur.ones[0] == after[k].ones,
             [k] { return "oscillator at w+" + std::to_string(k + 1); });
  }
  const Configuration w2 = advance_to_limit(cur, p, {}, 100);
  c.expect(w2.stage == ord("w*2") && w2.same_snapshot(w), [] { return "oscillator at w*2"; });
}

struct Criterion {
  int number;
  const char* title;
  double limit_seconds;
  void (*run)(Checker&);
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "surreal add/mul/neg agree with the dyadic oracle (length <= 5)", 60, surreal_oracle},
      {2, "simplicity round trip (length <= 7) and brute-force simplest (universe length <= 4)", 30, simplicity},
      {3, "Hessenberg laws and a +_s n = a + n on 200 random ordinals", 60, hessenberg},
      {4, "Goedel pairing: first 10^4 codes and 100 transfinite pairs", 10, pairing},
      {5, "codec round trips (delta_kappa, delta_kk, Raz, Cut) with transfinite lengths", 60, codecs},
      {6, "reduction soundness: sign<->cut, cauchy<->veronese, bounds at a < 32, w, w+1", 60, reduction_soundness},
      {7, "rr_add/rr_mul/rr_inv approximants within 1/(a+1) for a < 32", 60, field_realizers},
      {8, "IVT solver: roots, cubic residuals and bracket invariants", 120, ivt},
      {9, "strong reduction IVT -> B_I and zero sets of bi_to_ivt", 60, strong_reduction},
      {10, "machine: copier, echo, oscillator limit at w and after", 10, machine},
  };
  int failed = 0;
  for (auto& cr : criteria) {
    Checker c;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const Error& e) {
      error = std::string(e.kind()) + ": " + e.what();
    } catch (const Failure& f) {
      error = f.what;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = error.empty() && c.failed() == 0 && c.checks() > 0 && secs < cr.limit_seconds;
    std::printf("[%s] %2d %s (%zu checks, %.2f s)\n", ok ? "PASS" : "FAIL", cr.number, cr.title, c.checks(), secs);
    if (!error.empty()) std::printf("       error: %s\n", error.c_str());
    for (auto& f : c.failures()) std::printf("       failed: %s\n", f.c_str());
    if (c.failed() > c.failures().size())
      std::printf("       ... %zu failures in total\n", c.failed());
    if (secs >= cr.limit_seconds) std::printf("       over the %.0f s limit\n", cr.limit_seconds);
    failed += ok ? 0 : 1;
  }
  std::fflush(stdout);
  return failed;
}
