#include "rk/rational.hpp"

#include <cctype>

#include "rk/errors.hpp"

namespace rk {

bool is_dyadic(const Rational& q) {
  Integer d = boost::multiprecision::denominator(q);
  return (d & (d - 1)) == 0;
}

std::string rational_str(const Rational& q) {
  const Integer& n = boost::multiprecision::numerator(q);
  const Integer& d = boost::multiprecision::denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

namespace {

Integer parse_integer(const std::string& s, const std::string& whole) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) throw ParseError("rational '" + whole + "': missing digits");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw ParseError("rational '" + whole + "': unexpected character");
  Integer v(s[0] == '+' ? s.substr(1) : s);
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (auto slash = t.find('/'); slash != std::string::npos) {
    Integer n = parse_integer(t.substr(0, slash), text);
    Integer d = parse_integer(t.substr(slash + 1), text);
    if (d == 0) throw DivisionByZero("rational '" + text + "' has zero denominator");
    return Rational(n, d);
  }
  if (auto dot = t.find('.'); dot != std::string::npos) {
    std::string frac = t.substr(dot + 1);
    bool negative = !t.empty() && t[0] == '-';
    std::string ip = t.substr(0, dot);
    if (ip.empty() || ip == "-" || ip == "+") ip += "0";
    Integer whole = parse_integer(ip, text);
    if (frac.empty()) return Rational(whole);
    Integer f = parse_integer(frac, text);
    if (frac[0] == '-' || frac[0] == '+') throw ParseError("rational '" + text + "': bad fraction");
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(frac.size()));
    Rational r = Rational(abs(whole)) + Rational(f, scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(t, text));
}

}  // namespace rk
