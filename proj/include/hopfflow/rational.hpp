#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hopfflow {

using Rational = mpq_class;

// num/den in canonical form; mpq_class(num, den) does not reduce.
Rational ratio(long num, long den);

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

Rational factorial(unsigned n);
Rational binomial(long n, long k);
// Rational power with integer exponent, q != 0 for negative exponents.
Rational pow(const Rational& q, long e);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hopfflow
