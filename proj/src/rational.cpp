#include "macm/rational.hpp"

#include <cctype>

#include "macm/error.hpp"

namespace macm {

Integer pow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Rational pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (exponent < 0) {
    if (base == 0) throw Error(ErrorCode::ZeroDenominator, "zero raised to a negative power");
    Rational inv = 1 / base;
    return pow(inv, -exponent);
  }
  const auto e = static_cast<unsigned long>(exponent);
  Rational out(pow(Integer(base.get_num()), e), pow(Integer(base.get_den()), e));
  out.canonicalize();
  return out;
}

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

std::string to_string(const Rational& x) { return x.get_str(); }

std::string to_string(const Integer& x) { return x.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational");

  const auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos || s.find('e') != std::string::npos ||
          s.find('E') != std::string::npos)
        throw Error(ErrorCode::ParseError, "unsupported decimal form '" + s + "'");
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+")
        throw Error(ErrorCode::ParseError, "malformed decimal '" + s + "'");
      if (digits[0] == '+') digits.erase(0, 1);
      Rational out(Integer(digits, 10), pow(Integer(10), s.size() - dot - 1));
      out.canonicalize();
      return out;
    }
    if (s[0] == '+') s.erase(0, 1);
    Rational out(s, 10);
    if (out.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
    out.canonicalize();
    return out;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  }
}

double to_double(const Rational& x) { return x.get_d(); }

Integer ceil(const Rational& x) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

}  // namespace macm
