#pragma once

#include <functional>
#include <string>

namespace hopfflow {

// Scalar function of t from text: numbers, t, + - * / ^ (integer exponent),
// parentheses and sin, cos, exp. Throws UsageError on malformed input.
std::function<double(double)> parse_expression(const std::string& text);

}  // namespace hopfflow
