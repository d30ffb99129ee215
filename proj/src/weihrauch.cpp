#include "rk/weihrauch.hpp"

#include <cctype>
#include <map>
#include <mutex>

#include "rk/errors.hpp"
#include "rk/surreal.hpp"

namespace rk {

// ------------------------------------------------------------ polynomials

namespace {

void trim(Polynomial& p) {
  while (!p.coeffs.empty() && p.coeffs.back() == 0) p.coeffs.pop_back();
}

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("polynomial '" + s_ + "' at " + std::to_string(i_) + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }

  Polynomial expr() {
    Polynomial acc;
    bool negate = false;
    if (peek() == '+' || peek() == '-') negate = s_[i_++] == '-';
    acc = term();
    if (negate) acc = Polynomial{} - acc;
    while (peek() == '+' || peek() == '-') {
      const bool minus = s_[i_++] == '-';
      Polynomial t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++i_;
        acc = acc * power();
      } else if (c == '/') {
        ++i_;
        Polynomial d = power();
        if (d.degree() > 0 || d.coeffs.empty()) fail("division by a non-constant or zero");
        for (auto& a : acc.coeffs) a /= d.coeffs[0];
      } else if (c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek() != '^') return base;
    ++i_;
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected an exponent");
    const unsigned long n = std::stoul(s_.substr(start, i_ - start));
    if (n > 64) fail("exponent too large");
    Polynomial out{{Rational(1)}};
    for (unsigned long k = 0; k < n; ++k) out = out * base;
    return out;
  }

  Polynomial atom() {
    const char c = peek();
    if (c == 'x') {
      ++i_;
      return Polynomial{{Rational(0), Rational(1)}};
    }
    if (c == '(') {
      ++i_;
      Polynomial p = expr();
      if (peek() != ')') fail("expected ')'");
      ++i_;
      return p;
    }
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
    if (start == i_) fail("expected a number, x or '('");
    Polynomial p{{parse_rational(s_.substr(start, i_ - start))}};
    trim(p);
    return p;
  }
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
  Polynomial p = PolyParser(text).parse();
  trim(p);
  return p;
}

KRational Polynomial::operator()(const KRational& x) const {
  KRational acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + KRational(*it);
  return acc;
}

std::string Polynomial::str() const {
  if (coeffs.empty()) return "0";
  std::string out;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const Rational& c = coeffs[k];
    if (c == 0) continue;
    const Rational mag = c < 0 ? Rational(-c) : c;
    out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    if (k == 0 || mag != 1) out += rational_str(mag) + (k > 0 ? "*" : "");
    if (k > 0) out += "x";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), Rational(0));
  for (std::size_t k = 0; k < a.coeffs.size(); ++k) out.coeffs[k] += a.coeffs[k];
  for (std::size_t k = 0; k < b.coeffs.size(); ++k) out.coeffs[k] += b.coeffs[k];
  trim(out);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial nb = b;
  for (auto& c : nb.coeffs) c = -c;
  return a + nb;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  if (a.coeffs.empty() || b.coeffs.empty()) return out;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  trim(out);
  return out;
}

// ------------------------------------------------------------ function names

namespace {

struct Registry {
  std::mutex mutex;
  std::map<std::size_t, std::pair<std::string, EvaluatorFactory>> programs;
};

Registry& registry() {
  static Registry r;
  return r;
}

Name list_oracle(const std::vector<KRational>& xs) {
  std::vector<Name> comps;
  for (auto& x : xs) comps.push_back(krational_encode(x));
  return Name::tuple_listed(std::move(comps), Name::placeholder());
}

std::vector<KRational> read_list(const Name& oracle) {
  std::vector<KRational> out;
  if (auto listed = oracle.listed_components()) {
    if (!oracle.rest_component()->is_placeholder()) throw InvalidName("oracle list does not end");
    for (auto& c : *listed) out.push_back(krational_decode(c));
    return out;
  }
  for (std::uint64_t i = 0; i < 64; ++i) {
    Name c = oracle.component(Ordinal(i));
    if (c.is_placeholder()) return out;
    out.push_back(krational_decode(c));
  }
  throw InvalidName("oracle list has no terminating placeholder among 64 components");
}

Evaluator piecewise_evaluator(std::vector<KRational> flat) {
  if (flat.size() < 4 || flat.size() % 2) throw InvalidName("piecewise linear: need at least two (x, y) points");
  std::vector<std::pair<KRational, KRational>> pts;
  for (std::size_t i = 0; i < flat.size(); i += 2) pts.emplace_back(flat[i], flat[i + 1]);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (!(pts[i].first < pts[i + 1].first)) throw InvalidName("piecewise linear: x values must increase");
  return [pts](const KRational& x) {
    std::size_t i = 0;
    while (i + 2 < pts.size() && !(x < pts[i + 1].first)) ++i;
    const auto& [x0, y0] = pts[i];
    const auto& [x1, y1] = pts[i + 1];
    return y0 + (x - x0) * (y1 - y0) * (x1 - x0).reciprocal();
  };
}

void register_builtin_programs() {
  static std::once_flag once;
  std::call_once(once, [] {
    auto& r = registry();
    r.programs[0] = {"identity", [](const Name&) { return Evaluator([](const KRational& x) { return x; }); }};
    r.programs[1] = {"polynomial", [](const Name& oracle) {
                       Polynomial p;
                       for (auto& c : read_list(oracle)) {
                         auto q = c.as_rational();
                         if (!q) throw InvalidName("polynomial coefficient " + c.str() + " is not rational");
                         p.coeffs.push_back(*q);
                       }
                       return Evaluator([p](const KRational& x) { return p(x); });
                     }};
    r.programs[2] = {"zero", [](const Name&) { return Evaluator([](const KRational&) { return KRational(); }); }};
    r.programs[3] = {"piecewise-linear", [](const Name& oracle) { return piecewise_evaluator(read_list(oracle)); }};
  });
}

}  // namespace

void register_program(std::size_t index, std::string label, EvaluatorFactory factory) {
  register_builtin_programs();
  auto& r = registry();
  std::lock_guard lock(r.mutex);
  r.programs[index] = {std::move(label), std::move(factory)};
}

ContinuousFunctionName make_function(std::size_t program, const Name& oracle) {
  register_builtin_programs();
  std::pair<std::string, EvaluatorFactory> entry;
  {
    auto& r = registry();
    std::lock_guard lock(r.mutex);
    auto it = r.programs.find(program);
    if (it == r.programs.end()) throw UnknownProgram("no program registered under index " + std::to_string(program));
    entry = it->second;
  }
  return {program, oracle, entry.first, entry.second(oracle)};
}

ContinuousFunctionName identity_function() { return make_function(0, Name::constant(false)); }
ContinuousFunctionName zero_function() { return make_function(2, Name::constant(false)); }

ContinuousFunctionName polynomial_function(const Polynomial& p) {
  std::vector<KRational> cs(p.coeffs.begin(), p.coeffs.end());
  auto f = make_function(1, list_oracle(cs));
  f.label = p.str();
  return f;
}

ContinuousFunctionName piecewise_linear_function(const std::vector<std::pair<KRational, KRational>>& points) {
  std::vector<KRational> flat;
  for (auto& [x, y] : points) {
    flat.push_back(x);
    flat.push_back(y);
  }
  return make_function(3, list_oracle(flat));
}

Name fn_encode(const ContinuousFunctionName& f) {
  const std::uint64_t n = f.program;
  const Name oracle = f.oracle;
  // 0^n 1 p': finite positions shift by n+1, transfinite ones are unchanged.
  return Name::program(
      [n, oracle](const Ordinal& pos) {
        auto v = pos.finite_value();
        if (!v) return oracle.bit_at(pos);
        if (*v < n) return false;
        if (*v == n) return true;
        return oracle.bit_at(Ordinal(*v - n - 1));
      },
      oracle.budget());
}

ContinuousFunctionName fn_decode(const Name& p) {
  std::optional<std::uint64_t> n;
  for (std::uint64_t i = 0; i < 64 && !n; ++i)
    if (p.bit_at(Ordinal(i))) n = i;
  if (!n) throw UnknownProgram("no 0^n 1 header among the first 64 bits");
  const std::uint64_t k = *n;
  Name oracle = Name::program(
      [p, k](const Ordinal& pos) {
        auto v = pos.finite_value();
        return p.bit_at(v ? Ordinal(*v + k + 1) : pos);
      },
      p.budget());
  return make_function(k, oracle);
}

// ------------------------------------------------------------ realizer checks

MultiFunction exact_function(std::string label, std::function<KRational(const std::vector<KRational>&)> f) {
  return {std::move(label), [f](const Sample& s, const KRational& x, const Ordinal& alpha) {
            return within(x, f(s.values), alpha);
          }};
}

MultiFunction ivt_multifunction() {
  return {"IVT", [](const Sample& s, const KRational& x, const Ordinal& alpha) {
            const ContinuousFunctionName f = fn_decode(s.inputs.at(0));
            const KRational r = s.values.empty() ? KRational() : s.values[0];
            const KRational zero, one(Rational(1));
            return within(f(x), r, alpha) && below_plus(zero, x, alpha) && below_plus(x, one, alpha);
          }};
}

std::vector<Ordinal> finite_indices(std::uint64_t n) {
  std::vector<Ordinal> out;
  for (std::uint64_t i = 0; i < n; ++i) out.emplace_back(i);
  return out;
}

CheckReport check_realizes(const Realizer& F, const MultiFunction& f, const std::vector<Sample>& samples,
                           const std::vector<Ordinal>& indices) {
  CheckReport report;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Sample& s = samples[k];
    const std::string who = F.label + " vs " + f.label + " on " + (s.label.empty() ? "sample " + std::to_string(k) : s.label);
    try {
      const Name out = F(s.inputs);
      for (const Ordinal& alpha : indices) {
        const KRational x = approximant(out, alpha);
        ++report.checked;
        if (!f.accepts(s, x, alpha)) report.failures.push_back(who + ": approximant " + x.str() + " rejected at " + alpha.str());
      }
    } catch (const std::exception& e) {
      report.failures.push_back(who + ": " + e.what());
    }
  }
  report.ok = report.failures.empty();
  return report;
}

CheckReport check_strong_reduction(const Realizer& H, const Realizer& K, const Realizer& G, const MultiFunction& f,
                                   const std::vector<Sample>& samples, const std::vector<Ordinal>& indices) {
  const Realizer composed{H.label + " . " + G.label + " . " + K.label, K.arity,
                          [H, K, G](const std::vector<Name>& in) { return H({G({K(in)})}); }};
  return check_realizes(composed, f, samples, indices);
}

// ------------------------------------------------------------ boundedness

BIInstance BIInstance::from_lists(std::vector<SignSequence> lower, std::vector<SignSequence> upper,
                                  std::size_t inspected) {
  if (lower.empty() || upper.empty()) throw MalformedInstance("empty family");
  auto at = [](std::vector<SignSequence> xs) {
    return [xs = std::move(xs)](const Ordinal& a) {
      auto v = a.finite_value();
      return xs[v && *v < xs.size() ? *v : xs.size() - 1];
    };
  };
  return {at(std::move(lower)), at(std::move(upper)), inspected, true};
}

void BIInstance::validate() const {
  if (!promise) throw MalformedInstance("the boundedness promise is not asserted");
  if (inspected == 0) throw MalformedInstance("nothing inspected");
  for (std::size_t i = 0; i + 1 < inspected; ++i) {
    if (s_less(lower(Ordinal(i + 1)), lower(Ordinal(i))))
      throw MalformedInstance("lower family decreases at " + std::to_string(i + 1));
    if (s_less(upper(Ordinal(i)), upper(Ordinal(i + 1))))
      throw MalformedInstance("upper family increases at " + std::to_string(i + 1));
  }
  const Ordinal last(inspected - 1);
  if (s_less(upper(last), lower(last))) throw MalformedInstance("lower family exceeds the upper family");
}

Name bi_solve(const BIInstance& inst, std::size_t precision) {
  inst.validate();
  const std::size_t n = inst.inspected;
  std::vector<SignSequence> lo, up;
  for (std::size_t i = 0; i < n; ++i) {
    lo.push_back(inst.lower(Ordinal(i)));
    up.push_back(inst.upper(Ordinal(i)));
  }
  bool stable = true;
  for (std::size_t i = n / 2; i < n; ++i) stable = stable && lo[i] == lo[n - 1] && up[i] == up[n - 1];
  if (stable) {
    const SignSequence& l = lo[n - 1];
    const SignSequence& u = up[n - 1];
    return rk_cauchy_encode(l == u ? l : simplest_between({{l}, {u}}));
  }

  auto lk = std::make_shared<std::vector<KRational>>();
  auto uk = std::make_shared<std::vector<KRational>>();
  for (std::size_t i = 0; i < n; ++i) {
    lk->push_back(KRational::from_sign_sequence(lo[i]));
    uk->push_back(KRational::from_sign_sequence(up[i]));
  }
  auto bracket = [lk, uk](const Ordinal& alpha) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < lk->size(); ++i)
      if (within((*uk)[i], (*lk)[i], alpha)) return i;
    return std::nullopt;
  };
  if (!bracket(Ordinal(precision)))
    throw FuelExhausted("bi_solve: neither stabilization nor a bracket below 1/" + std::to_string(precision + 1) +
                        " within " + std::to_string(n) + " indices");
  // Veronese name: the pair at even a is a bracket of width < 1/(a+1).
  Name veronese = real_name([lk, uk, bracket](const Ordinal& alpha) {
    const bool even = is_even(alpha);
    const Ordinal base = even ? alpha : pred(alpha);
    auto i = bracket(base);
    if (!i) throw FuelExhausted("bi_solve: no inspected bracket is narrower than 1/(" + base.str() + "+1)");
    return even ? (*lk)[*i] : (*uk)[*i];
  });
  return veronese_to_cauchy(veronese);
}

Name bi_encode(const BIInstance& inst) {
  auto lower = inst.lower;
  auto upper = inst.upper;
  return Name::tuple([lower, upper](const Ordinal& alpha) {
    return is_even(alpha) ? raz_encode(lower(even_index(alpha))) : raz_encode(upper(even_index(pred(alpha))));
  });
}

BIInstance bi_decode(const Name& p, std::size_t inspected) {
  return {[p](const Ordinal& i) { return raz_decode(p.component(nth_even(i))); },
          [p](const Ordinal& i) { return raz_decode(p.component(succ(nth_even(i)))); }, inspected, true};
}

ContinuousFunctionName bi_to_ivt(const BIInstance& inst) {
  inst.validate();
  const Ordinal last(inst.inspected - 1);
  const KRational l = KRational::from_sign_sequence(inst.lower(last));
  const KRational u = KRational::from_sign_sequence(inst.upper(last));
  const KRational one(Rational(1));
  std::vector<std::pair<KRational, KRational>> pts{{l - one, -one}, {l, KRational()}};
  if (u != l) pts.emplace_back(u, KRational());
  pts.emplace_back(u + one, one);
  auto f = piecewise_linear_function(pts);
  f.label = "zero on [" + l.str() + ", " + u.str() + "]";
  return f;
}

// ------------------------------------------------------------ IVT

namespace {

// Index gamma >= 2 lies among the 2^(L-2) sequences of length L.
std::pair<unsigned, std::uint64_t> dense_slot(std::uint64_t gamma) {
  unsigned len = 2;
  std::uint64_t start = 2;
  while (len < 64 && gamma - start >= (std::uint64_t{1} << (len - 2))) {
    start += std::uint64_t{1} << (len - 2);
    ++len;
  }
  return {len, gamma - start};
}

std::uint64_t dense_length(std::uint64_t gamma) { return gamma < 2 ? gamma : dense_slot(gamma).first; }

}  // namespace

SignSequence enumerate_dense(std::uint64_t gamma) {
  if (gamma == 0) return SignSequence();
  if (gamma == 1) return SignSequence::parse("+");
  auto [len, k] = dense_slot(gamma);
  std::string s = "+-";
  for (unsigned b = len - 2; b-- > 0;) s += (k >> b & 1) ? '+' : '-';
  return SignSequence::parse(s);
}

Rational dense_value(std::uint64_t gamma) {
  if (gamma < 2) return Rational(gamma);
  auto [len, k] = dense_slot(gamma);
  return Rational(Integer(2 * k + 1), Integer(1) << (len - 1));
}

IvtStages ivt_stages(const ContinuousFunctionName& f, const SignSequence& r, std::size_t stages, std::size_t fuel) {
  IvtStages out;
  const KRational target = KRational::from_sign_sequence(r);
  auto sign = [&](const Rational& x) {
    if (++out.evaluations > fuel) throw FuelExhausted("ivt: " + std::to_string(fuel) + " evaluations spent");
    return (f(KRational(x)) - target).sign();
  };
  if (!(sign(Rational(0)) < 0 && sign(Rational(1)) > 0))
    throw BadEndpoints("ivt: need f(0) < r < f(1) for r = " + target.str());

  // First dense point strictly inside (a, b), by length then value, whose
  // sign satisfies `want`.
  auto first_inside = [&](const Rational& a, const Rational& b, auto want) -> std::pair<Rational, int> {
    // Exact rationals, so lengths are not limited by the index range.
    for (unsigned len = 2; len < 4096; ++len) {
      const Integer den = Integer(1) << (len - 1);
      const Integer count = Integer(1) << (len - 2);
      // Odd numerators m with a < m/den < b.
      Integer m = numerator(Rational(a * den)) / denominator(Rational(a * den)) + 1;
      if (m % 2 == 0) ++m;
      for (; Rational(m, den) < b && (m - 1) / 2 < count; m += 2) {
        const Rational d(m, den);
        if (!(a < d)) continue;
        if (int s = sign(d); want(s)) return {d, s};
      }
    }
    throw FuelExhausted("ivt: no dense point of length < 4096 in the bracket");
  };

  Rational lo(0), hi(1);
  out.lower.push_back(from_dyadic(lo));
  out.upper.push_back(from_dyadic(hi));
  for (std::size_t stage = 1; stage < stages; ++stage) {
    const Rational old_lo = lo, old_hi = hi;
    auto [beta, pair] = godel_unpair(Ordinal(stage));
    auto [gamma, delta] = godel_unpair(pair);
    const std::uint64_t b = *beta.finite_value(), c = *gamma.finite_value(), d = *delta.finite_value();
    const Rational dc = dense_value(c), dd = dense_value(d);
    if (lo < dc && dc < dd && dd < hi && dense_length(c) + dense_length(d) <= b && sign(dc) < 0 && sign(dd) > 0) {
      lo = dc;
      hi = dd;
      ++out.dovetailed;
    } else {
      auto [p, s] = first_inside(lo, hi, [](int s) { return s != 0; });
      if (s < 0) {
        lo = p;
        hi = first_inside(lo, hi, [](int s) { return s > 0; }).first;
      } else {
        hi = p;
        lo = first_inside(lo, hi, [](int s) { return s < 0; }).first;
      }
    }
    if (lo < old_lo || old_hi < hi || !(lo < hi)) throw std::logic_error("ivt: bracketing invariant violated");
    out.lower.push_back(from_dyadic(lo));
    out.upper.push_back(from_dyadic(hi));
  }
  return out;
}

Name ivt_solve(const ContinuousFunctionName& f, const SignSequence& r, std::size_t fuel, std::size_t stages,
               std::size_t precision) {
  IvtStages st = ivt_stages(f, r, stages, fuel);
  return bi_solve(BIInstance::from_lists(st.lower, st.upper, stages), precision);
}

Realizer realizer_ivt_to_bi(const SignSequence& r, std::size_t stages, std::size_t fuel) {
  return {"ivt_to_bi", 1, [r, stages, fuel](const std::vector<Name>& in) {
            IvtStages st = ivt_stages(fn_decode(in[0]), r, stages, fuel);
            return bi_encode(BIInstance::from_lists(st.lower, st.upper, stages));
          }};
}

Realizer realizer_bi_solve(std::size_t inspected, std::size_t precision) {
  return {"bi_solve", 1, [inspected, precision](const std::vector<Name>& in) {
            return bi_solve(bi_decode(in[0], inspected), precision);
          }};
}

Realizer realizer_identity() {
  return {"identity", 1, [](const std::vector<Name>& in) { return in[0]; }};
}

}  // namespace rk
