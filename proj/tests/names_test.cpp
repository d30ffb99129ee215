#include "rk/codecs.hpp"

#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "rk/errors.hpp"
#include "test_support.hpp"

using namespace rk;
using rk::testing::ord;
using rk::testing::sign_strings_up_to;

namespace {

SignSequence ss(const std::string& s) { return SignSequence::parse(s.empty() ? "0" : s); }

std::vector<SignSequence> transfinite_corpus() {
  std::vector<SignSequence> out;
  for (const char* s : {"(+)^w", "(+)^(w+1)", "(+)^(w*2)", "(-)^w", "(-)^(w+1)+", "+(-)^w",
                        "(+)^w-", "(+)^w-(+)^(w+1)", "-+(-)^(w*2)+-", "(+)^(w*2+1)(-)^w"})
    out.push_back(SignSequence::parse(s));
  return out;
}

std::vector<Ordinal> ordinals_below_w3_3() {
  std::vector<Ordinal> out;
  for (std::uint64_t a = 0; a <= 3; ++a)
    for (std::uint64_t b = 0; b < (a == 3 ? 3u : 12u); ++b)
      out.push_back(ord_add(ord_mul(Ordinal::omega(), Ordinal(a)), Ordinal(b)));
  return out;
}

}  // namespace

TEST(Name, ExplicitBitsAndBudget) {
  auto p = Name::explicit_bits({{true, Ordinal(2)}, {false, ord("w")}, {true, Ordinal(1)}}, "01");
  EXPECT_EQ(p.prefix_bits(4), "1100");
  EXPECT_TRUE(p.bit_at(ord("w")));  // 2 + w = w, so the 1-run starts at w
  EXPECT_FALSE(p.bit_at(ord("w+1")));
  EXPECT_TRUE(p.bit_at(ord("w+2")));
  EXPECT_FALSE(p.bit_at(ord("w*2")));
  EXPECT_THROW(p.bit_at(ord("w^2")), BudgetExceeded);
  EXPECT_NO_THROW(p.with_budget(ord("w^3")).bit_at(ord("w^2")));
}

TEST(Name, TupleExamples) {
  auto zeros = Name::tuple([](const Ordinal&) { return Name::constant(false); });
  for (std::uint64_t i = 0; i < 50; ++i) EXPECT_FALSE(zeros.bit_at(Ordinal(i)));
  auto f0 = Name::explicit_bits({{true, Ordinal(1)}, {false, Ordinal(1)}}, "1");  // 1011...
  auto f1 = Name::constant(false);
  auto t = Name::tuple_listed({f0, f1}, Name::constant(true));
  EXPECT_EQ(t.component(Ordinal(1)).bit_at(Ordinal(0)), t.bit_at(godel_pair(Ordinal(1), Ordinal(0))));
  EXPECT_FALSE(t.bit_at(godel_pair(Ordinal(0), Ordinal(1))));
  EXPECT_TRUE(t.bit_at(godel_pair(Ordinal(0), Ordinal(2))));
}

TEST(Name, TupleComponentIdentitySampled) {
  auto comp = [](const Ordinal& a) {
    return Name::program([a](const Ordinal& b) { return (a.hash() ^ (b.hash() * 31)) % 3 == 0; });
  };
  auto t = Name::tuple(comp);
  auto view = Name::program([t](const Ordinal& pos) { return t.bit_at(pos); });
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    Ordinal a = rk::testing::random_ordinal(rng, 1, 2), b = rk::testing::random_ordinal(rng, 1, 2);
    if (!(godel_pair(a, b) < t.budget())) continue;
    EXPECT_EQ(t.bit_at(godel_pair(a, b)), comp(a).bit_at(b));
    // The generic component view of a non-tuple name satisfies the same identity.
    EXPECT_EQ(view.component(a).bit_at(b), comp(a).bit_at(b));
  }
}

TEST(Name, ConcatFixed) {
  auto q = Name::concat_fixed({"11", "00"}, "01");
  EXPECT_EQ(q.prefix_bits(8), "11000101");
  auto lazy = Name::concat_fixed([](const Ordinal& a) { return a == Ordinal::omega() ? std::string("11") : "01"; });
  EXPECT_TRUE(lazy.bit_at(ord("w")));  // word w starts at 2*w = w
  EXPECT_TRUE(lazy.bit_at(ord("w+1")));
  EXPECT_FALSE(lazy.bit_at(ord("w+2")));
  for (std::uint64_t n = 0; n < 20; ++n) {
    EXPECT_FALSE(lazy.bit_at(Ordinal(2 * n)));
    EXPECT_TRUE(lazy.bit_at(Ordinal(2 * n + 1)));
  }
}

TEST(Name, PlaceholderDetection) {
  EXPECT_TRUE(Name::placeholder().is_placeholder());
  EXPECT_TRUE(Name::explicit_bits({{true, Ordinal(1)}, {false, Ordinal(1)}}, "1010").is_placeholder());
  EXPECT_FALSE(Name::explicit_bits({{true, Ordinal(1)}}, "01").is_placeholder());
  EXPECT_FALSE(raz_encode(ss("+")).is_placeholder());
  EXPECT_FALSE(Name::program([](const Ordinal& p) { return p == Ordinal(5); }).is_placeholder());
  auto looks_like = Name::program([](const Ordinal& p) { return is_even(p); });
  EXPECT_TRUE(looks_like.is_placeholder());
  auto late_deviation = Name::program([](const Ordinal& p) { return is_even(p) != (p == ord("w+1")); });
  EXPECT_FALSE(late_deviation.is_placeholder());
}

TEST(Name, ConcurrentQueriesAgree) {
  std::atomic<int> calls{0};
  auto p = Name::program([&](const Ordinal& pos) {
    ++calls;
    return pos.finite_part() % 3 == 1;
  });
  std::vector<std::thread> threads;
  std::vector<std::string> seen(4);
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] { seen[t] = p.prefix_bits(200); });
  for (auto& th : threads) th.join();
  for (auto& s : seen) EXPECT_EQ(s, seen[0]);
}

TEST(Name, JsonRoundTrip) {
  auto check = [](const Name& p) {
    Name back = Name::from_json(p.to_json());
    EXPECT_EQ(back.to_json(), p.to_json());
    for (std::uint64_t i = 0; i < 40; ++i) EXPECT_EQ(back.bit_at(Ordinal(i)), p.bit_at(Ordinal(i)));
    EXPECT_EQ(back.bit_at(ord("w+1")), p.bit_at(ord("w+1")));
  };
  check(raz_encode(SignSequence::parse("(+)^w-")));
  check(cut_encode(ss("+-+")));
  check(cut_encode(SignSequence::parse("(+)^w")));
  check(delta_kk_encode(OrdinalFamily::parse("[1; w]")));
  EXPECT_THROW(Name::program([](const Ordinal&) { return true; }).to_json(), InvalidName);
  EXPECT_THROW(Name::from_json("{\"shape\":"), ParseError);
  EXPECT_THROW(Name::from_json(R"({"shape":"program","budget":"w^2","payload":{"annotation":"nope:1"}})"),
               InvalidName);
}

TEST(DeltaKappa, Examples) {
  EXPECT_EQ(delta_kappa_encode(Ordinal(0)).prefix_bits(4), "1000");
  EXPECT_EQ(delta_kappa_encode(Ordinal(2)).prefix_bits(4), "0010");
  auto w = delta_kappa_encode(ord("w"));
  EXPECT_EQ(w.shape(), Shape::EXPLICIT);
  EXPECT_EQ(w.prefix_bits(30), std::string(30, '0'));
  EXPECT_TRUE(w.bit_at(ord("w")));
  EXPECT_FALSE(w.bit_at(ord("w+1")));
}

TEST(DeltaKappa, RoundTrip) {
  for (auto& a : ordinals_below_w3_3()) EXPECT_EQ(delta_kappa_decode(delta_kappa_encode(a)), a) << a.str();
  EXPECT_THROW(delta_kappa_decode(Name::constant(false)), InvalidName);
  EXPECT_THROW(delta_kappa_decode(Name::explicit_bits({{true, Ordinal(2)}}, "0")), InvalidName);
  EXPECT_THROW(delta_kappa_decode(Name::explicit_bits({{true, Ordinal(1)}}, "01")), InvalidName);
  auto lazy = Name::program([](const Ordinal& p) { return p == Ordinal(7); });
  EXPECT_EQ(delta_kappa_decode(lazy), Ordinal(7));
}

TEST(DeltaKK, Examples) {
  EXPECT_EQ(delta_kk_encode(OrdinalFamily{}).prefix_bits(6), "010101");
  EXPECT_EQ(delta_kk_encode(OrdinalFamily::parse("[1; 0]")).prefix_bits(7), "0010101");
  auto x = OrdinalFamily::parse("[2, w, 1; 0]");
  auto p = delta_kk_encode(x);
  EXPECT_EQ(p.prefix_bits(4), "0001");
  // The second word 0^(w+1)1 starts at 4; its zeros fill [4, 4+(w+1)) = [4, w+1).
  EXPECT_FALSE(p.bit_at(ord("w")));
  EXPECT_TRUE(p.bit_at(ord("w+1")));
  EXPECT_EQ(delta_kk_decode(p), x);
  EXPECT_EQ(x.at(Ordinal(1)), ord("w"));
  EXPECT_EQ(x.at(ord("w")), Ordinal(0));
}

TEST(DeltaKK, RoundTrips) {
  std::vector<std::string> corpus{"[; 0]", "[; 3]", "[0, 1, 2; 5]", "[w; 0]", "[w+1, w*2, 3; 1, 2]",
                                  "[; 1, 0, 2]", "[w*3+2; 4]", "[1; w]", "[; w, 0]", "[2; w+1, w^2]"};
  for (auto& s : corpus) {
    auto x = OrdinalFamily::parse(s);
    EXPECT_EQ(delta_kk_decode(delta_kk_encode(x)), x) << s;
  }
  for (auto& a : ordinals_below_w3_3()) {
    OrdinalFamily x{{a, Ordinal(1), a}, {Ordinal(0)}};
    EXPECT_EQ(delta_kk_decode(delta_kk_encode(x)), x) << a.str();
  }
  // Transfinite cycles are positioned by ordinal division.
  auto p = delta_kk_encode(OrdinalFamily::parse("[; w]"));
  EXPECT_FALSE(p.bit_at(Ordinal(5)));
  EXPECT_FALSE(p.bit_at(ord("w")));
  EXPECT_TRUE(p.bit_at(ord("w+1")));
  EXPECT_FALSE(p.bit_at(ord("w*2")));
  EXPECT_TRUE(p.bit_at(ord("w*2+1")));  // second word: zeros fill [w+2, w*2+1)
  EXPECT_THROW(delta_kk_decode(Name::explicit_bits({{true, Ordinal(1)}}, "01")), InvalidName);
  EXPECT_THROW(delta_kk_decode(Name::explicit_bits({{false, ord("w")}, {true, Ordinal(1)}}, "01")), InvalidName);
  EXPECT_THROW(delta_kk_decode(Name::constant(false)), InvalidName);
}

TEST(Raz, Examples) {
  EXPECT_EQ(raz_encode(ss("")).prefix_bits(6), "010101");
  EXPECT_EQ(raz_encode(ss("+-")).prefix_bits(8), "11000101");
  auto w = raz_encode(SignSequence::ordinal(ord("w")));
  EXPECT_EQ(w.prefix_bits(40), std::string(40, '1'));
  EXPECT_FALSE(w.bit_at(ord("w")));
  EXPECT_TRUE(w.bit_at(ord("w+1")));
}

TEST(Raz, RoundTrips) {
  for (auto& s : sign_strings_up_to(5)) EXPECT_EQ(raz_decode(raz_encode(ss(s))), ss(s)) << s;
  for (auto& q : transfinite_corpus()) EXPECT_EQ(raz_decode(raz_encode(q)), q) << q.str();
  EXPECT_THROW(raz_decode(Name::concat_fixed({"10"}, "01")), InvalidName);
  EXPECT_THROW(raz_decode(Name::concat_fixed({"01", "11"}, "01")), InvalidName);
  EXPECT_THROW(raz_decode(Name::constant(true)), InvalidName);
  // Words straddling runs: 1 | 1 0 0 | 0 1 ...
  EXPECT_EQ(raz_decode(Name::explicit_bits({{true, Ordinal(1)}, {true, Ordinal(1)}, {false, Ordinal(3)}}, "10")),
            ss("+-"));
  // Lazily defined codes are read word by word.
  auto lazy = Name::program([](const Ordinal& p) {
    auto n = p.finite_value();
    return n ? (*n < 4 ? *n < 2 : *n % 2 == 1) : p.finite_part() % 2 == 1;
  });
  EXPECT_EQ(raz_decode(lazy), ss("+-"));
}

TEST(Cut, Examples) {
  auto zero = cut_encode(ss(""));
  for (std::uint64_t i = 0; i < 10; ++i) EXPECT_TRUE(zero.component(Ordinal(i)).is_placeholder());
  EXPECT_EQ(cut_decode(zero), ss(""));
  auto half = cut_encode(ss("+-"));
  EXPECT_EQ(cut_decode(half.component(Ordinal(0))), ss(""));
  EXPECT_EQ(cut_decode(half.component(Ordinal(1))), ss("+"));
  EXPECT_EQ(cut_decode(half), ss("+-"));
  auto hole = Name::placeholder();
  auto code = Name::tuple_listed({cut_encode(ss("")), hole, cut_encode(ss("++")), hole}, hole);
  EXPECT_EQ(cut_decode(code), ss("+++"));
}

TEST(Cut, RoundTrips) {
  for (auto& s : sign_strings_up_to(5)) EXPECT_EQ(cut_decode(cut_encode(ss(s))), ss(s)) << s;
  for (auto& q : transfinite_corpus()) EXPECT_EQ(cut_decode(cut_encode(q)), q) << q.str();
}

TEST(Cut, TransfiniteComponents) {
  auto p = cut_encode(SignSequence::parse("(+)^w-"));
  // Left options: prefixes +^n; the n-th sits at the n-th even index.
  EXPECT_EQ(cut_decode(p.component(Ordinal(6))), ss("+++"));
  EXPECT_EQ(cut_decode(p.component(Ordinal(1))), SignSequence::ordinal(ord("w")));
  EXPECT_TRUE(p.component(Ordinal(3)).is_placeholder());
}

TEST(Cut, PaddingAndDiscipline) {
  auto hole = Name::placeholder();
  // Extra placeholders beyond the options do not change the value.
  auto padded = Name::tuple_listed({cut_encode(ss("")), cut_encode(ss("+")), hole, hole, hole, hole}, hole);
  EXPECT_EQ(cut_decode(padded), ss("+-"));
  // An option after a placeholder in the same parity class.
  auto bad = Name::tuple_listed({hole, hole, cut_encode(ss("")), hole}, hole);
  EXPECT_THROW(cut_decode(bad), InvalidName);
  // Options that are not separated.
  auto clash = Name::tuple_listed({cut_encode(ss("+")), cut_encode(ss(""))}, hole);
  EXPECT_THROW(cut_decode(clash), InvalidName);
  // A lazily defined tuple whose placeholders start early is accepted.
  auto lazy = Name::tuple([hole](const Ordinal& a) { return a == Ordinal(0) ? cut_encode(SignSequence()) : hole; });
  EXPECT_EQ(cut_decode(lazy), ss("+"));
  EXPECT_THROW(cut_decode(cut_encode(ss("+++")), 2), InvalidName);
}

TEST(KRationalCodec, RoundTrips) {
  std::vector<KRational> corpus{Rational(0), Rational(3, 4), Rational(-5), Rational(1, 3), Rational(-7, 12),
                                KRational::from_ordinal(ord("w+2")),
                                KRational::from_sign_sequence(SignSequence::parse("(-)^w+-")),
                                KRational(OmegaPoly(1), ord("w*2+3")),
                                KRational(OmegaPoly::from_ordinal(ord("w")) * OmegaPoly(Rational(1, 4)) - OmegaPoly(1),
                                          ord("w*2+3"))};
  for (auto& q : corpus) {
    Name p = krational_encode(q);
    EXPECT_EQ(krational_decode(p), q) << q.str();
    EXPECT_EQ(q.has_sign_sequence(), p.shape() == Shape::EXPLICIT) << q.str();
  }
  EXPECT_EQ(krational_encode(Rational(1, 2)).prefix_bits(4), "1100");
  EXPECT_EQ(krational_encode(Rational(1, 3)).prefix_bits(2), "10");
}

TEST(RealNames, CauchyCheckExamples) {
  auto zero = rk_cauchy_encode(SignSequence());
  EXPECT_TRUE(rk_cauchy_check(zero, KRational(), ord("w+2")));
  auto half = rk_cauchy_encode(ss("+-"));
  EXPECT_TRUE(rk_cauchy_check(half, KRational(Rational(1, 2)), ord("w+2")));
  auto r = rk_cauchy_check(zero, KRational(Rational(2)), ord("w+2"));
  EXPECT_FALSE(r);
  EXPECT_EQ(*r.failed_at, Ordinal(0));
  // A genuinely converging name: x_a = 1/2 + 1/(2a+2).
  auto conv = real_name([](const Ordinal& a) {
    return KRational(Rational(1, 2)) + KRational(OmegaPoly(1), nat_mul(succ(a), Ordinal(2)));
  });
  EXPECT_TRUE(rk_cauchy_check(conv, KRational(Rational(1, 2)), ord("w+2")));
  EXPECT_FALSE(rk_cauchy_check(conv, KRational(Rational(1, 2) + Rational(1, 1000)), ord("w+2")));
}

TEST(RealNames, VeroneseCheckExamples) {
  // Even index 2j: 1/2 - 1/2^(j+3); odd index 2j+1: 1/2 + 1/2^(j+3). At w, w+1 the
  // gap must be infinitesimal: use 1/2 -+ 1/(w*4+1).
  auto value = [](const Ordinal& a) -> KRational {
    if (auto n = a.finite_value()) {
      Rational d = Rational(1, Integer(1) << (*n / 2 + 3));
      return Rational(1, 2) + (*n % 2 ? d : Rational(-d));
    }
    KRational eps(OmegaPoly(1), nat_add(nat_mul(a.limit_part(), Ordinal(4)), Ordinal(1)));
    return KRational(Rational(1, 2)) + (is_even(a) ? -eps : eps);
  };
  EXPECT_TRUE(rk_veronese_check(real_name(value), ord("w+2")));
  auto hole = Name::placeholder();
  auto bad = Name::tuple_listed({raz_encode(ss("")), raz_encode(ss("++"))}, raz_encode(ss("")));
  auto r = rk_veronese_check(bad, ord("w+2"));
  EXPECT_FALSE(r);
  EXPECT_EQ(*r.failed_at, Ordinal(0));
  auto constant = Name::tuple([](const Ordinal& a) { return raz_encode(is_even(a) ? SignSequence() : ss("+")); });
  EXPECT_FALSE(rk_veronese_check(constant, ord("w+2")));
  (void)hole;
}
