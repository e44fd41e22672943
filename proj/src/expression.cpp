#include "hopfflow/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>

#include <fmt/format.h>

#include "hopfflow/errors.hpp"

namespace hopfflow {

namespace {

using Fn = std::function<double(double)>;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Fn parse() {
    Fn f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected input");
    return f;
  }

 private:
  Fn expr() {
    Fn f = term();
    while (true) {
      if (eat('+')) {
        Fn g = term();
        f = [f, g](double t) { return f(t) + g(t); };
      } else if (eat('-')) {
        Fn g = term();
        f = [f, g](double t) { return f(t) - g(t); };
      } else {
        return f;
      }
    }
  }

  Fn term() {
    Fn f = power();
    while (true) {
      if (eat('*')) {
        Fn g = power();
        f = [f, g](double t) { return f(t) * g(t); };
      } else if (eat('/')) {
        Fn g = power();
        f = [f, g](double t) { return f(t) / g(t); };
      } else {
        return f;
      }
    }
  }

  Fn power() {
    Fn f = unary();
    if (!eat('^')) return f;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a non-negative integer");
    int n = std::stoi(s_.substr(start, pos_ - start));
    return [f, n](double t) { return std::pow(f(t), n); };
  }

  Fn unary() {
    if (eat('-')) {
      Fn f = unary();
      return [f](double t) { return -f(t); };
    }
    if (eat('+')) return unary();
    return primary();
  }

  Fn primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return [v](double) { return v; };
    }
    if (eat('(')) {
      Fn f = expr();
      if (!eat(')')) fail("expected ')'");
      return f;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "t") return [](double t) { return t; };
    double (*fn)(double) = nullptr;
    if (name == "sin") fn = [](double x) { return std::sin(x); };
    if (name == "cos") fn = [](double x) { return std::cos(x); };
    if (name == "exp") fn = [](double x) { return std::exp(x); };
    if (!fn) {
      pos_ = start;
      fail(name.empty() ? "unexpected character" : "unknown name '" + name + "'");
    }
    if (!eat('(')) fail("expected '(' after " + name);
    Fn f = expr();
    if (!eat(')')) fail("expected ')'");
    return [fn, f](double t) { return fn(f(t)); };
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw UsageError(fmt::format("expression '{}': {} at column {}", s_, msg, pos_ + 1));
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) { return Parser(text).parse(); }

}  // namespace hopfflow
