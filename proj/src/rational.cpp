#include "hopfflow/rational.hpp"

#include <cctype>

namespace hopfflow {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Rational parse_decimal(std::string_view s) {
  // "1.25", "-0.5e-3"
  std::size_t epos = s.find_first_of("eE");
  long exponent = 0;
  std::string_view mant = s;
  if (epos != std::string_view::npos) {
    std::string_view es = s.substr(epos + 1);
    if (!valid_integer(es)) throw ParseError("bad exponent in '" + std::string(s) + "'");
    exponent = std::stol(std::string(es));
    mant = s.substr(0, epos);
  }
  std::size_t dot = mant.find('.');
  std::string digits(mant.substr(0, dot));
  std::string frac;
  if (dot != std::string_view::npos) frac = std::string(mant.substr(dot + 1));
  if (digits.empty() || digits == "-" || digits == "+") digits += "0";
  bool frac_ok = frac.empty() || (std::isdigit(static_cast<unsigned char>(frac[0])) && valid_integer(frac));
  if (!valid_integer(digits) || !frac_ok) throw ParseError("not a number: '" + std::string(s) + "'");
  std::string all = digits + frac;
  Rational q(mpz_class(all[0] == '+' ? all.substr(1) : all, 10));
  q /= pow(Rational(10), static_cast<long>(frac.size()));
  q *= pow(Rational(10), exponent);
  return q;
}

}  // namespace

Rational ratio(long num, long den) {
  if (den == 0) throw std::domain_error("ratio: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den)) throw ParseError("not a rational: '" + s + "'");
    mpz_class d(den[0] == '+' ? den.substr(1) : den, 10);
    if (d == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational q(mpz_class(num[0] == '+' ? num.substr(1) : num, 10), d);
    q.canonicalize();
    return q;
  }
  if (valid_integer(s)) return Rational(mpz_class(s[0] == '+' ? s.substr(1) : s, 10));
  return parse_decimal(s);
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

Rational pow(const Rational& q, long e) {
  if (e < 0) {
    if (q == 0) throw std::domain_error("zero to a negative power");
    Rational inv = 1 / q;
    return pow(inv, -e);
  }
  Rational r(1), base(q);
  unsigned long n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1u) r *= base;
    base *= base;
    n >>= 1u;
  }
  return r;
}

}  // namespace hopfflow
