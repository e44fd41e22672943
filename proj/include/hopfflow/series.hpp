#pragma once

#include <algorithm>
#include <vector>

#include "hopfflow/carriers.hpp"
#include "hopfflow/rational.hpp"

namespace hopfflow {

// Truncated power series Σ_{k≤N} c_k t^k over a carrier V.
template <class V>
class Series {
 public:
  Series() = default;
  Series(std::size_t N, const V& zero) : c_(N + 1, zero), zero_(zero) {}

  static Series constant(std::size_t N, const V& zero, const V& v) {
    Series s(N, zero);
    s.c_[0] = v;
    return s;
  }
  // v·t^k
  static Series monomial(std::size_t N, const V& zero, const V& v, std::size_t k) {
    Series s(N, zero);
    if (k <= N) s.c_[k] = v;
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const V& zero_coeff() const { return zero_; }
  V& operator[](std::size_t k) { return c_.at(k); }
  const V& operator[](std::size_t k) const { return c_.at(k); }
  const std::vector<V>& coeffs() const { return c_; }

  // Index of the first nonzero coefficient; order()+1 for the zero series.
  std::size_t filtration() const {
    for (std::size_t k = 0; k < c_.size(); ++k)
      if (!is_zero(c_[k])) return k;
    return c_.size();
  }
  bool zero() const { return filtration() == c_.size(); }

  Series truncated(std::size_t N) const {
    Series s(std::min(N, order()), zero_);
    for (std::size_t k = 0; k <= s.order(); ++k) s.c_[k] = c_[k];
    return s;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series s(std::min(a.order(), b.order()), a.zero_);
    for (std::size_t k = 0; k <= s.order(); ++k) s.c_[k] = a.c_[k] + b.c_[k];
    return s;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series s(std::min(a.order(), b.order()), a.zero_);
    for (std::size_t k = 0; k <= s.order(); ++k) s.c_[k] = a.c_[k] - b.c_[k];
    return s;
  }
  friend Series operator-(const Series& a) { return Rational(-1) * a; }
  friend Series operator*(const Series& a, const Series& b) {
    Series s(std::min(a.order(), b.order()), a.zero_);
    std::size_t fa = a.filtration(), fb = b.filtration();
    for (std::size_t i = fa; i <= s.order(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = fb; i + j <= s.order(); ++j) {
        if (is_zero(b.c_[j])) continue;
        s.c_[i + j] = s.c_[i + j] + a.c_[i] * b.c_[j];
      }
    }
    return s;
  }
  friend Series operator*(const Rational& c, const Series& a) {
    Series s = a;
    for (auto& x : s.c_) x = c * x;
    return s;
  }
  friend bool operator==(const Series& a, const Series& b) { return a.c_ == b.c_; }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }

 private:
  std::vector<V> c_;
  V zero_;
};

template <class V>
bool is_zero(const Series<V>& s) {
  return s.zero();
}

template <class V>
double magnitude(const Series<V>& s) {
  double m = 0;
  for (const auto& c : s.coeffs()) m = std::max(m, magnitude(c));
  return m;
}

// exp of a series with vanishing constant term; `one` is the carrier unit.
template <class V>
Series<V> series_exp(const Series<V>& x, const V& one) {
  if (x.filtration() == 0) throw WrongConstantTerm("series_exp: constant term must vanish");
  const std::size_t N = x.order();
  Series<V> result = Series<V>::constant(N, x.zero_coeff(), one);
  Series<V> power = result;
  for (std::size_t k = 1; k <= N; ++k) {
    power = power * x;
    if (power.zero()) break;
    result = result + (1 / factorial(static_cast<unsigned>(k))) * power;
  }
  return result;
}

// log(1 + x) for x with vanishing constant term.
template <class V>
Series<V> series_log1p(const Series<V>& x) {
  if (x.filtration() == 0) throw WrongConstantTerm("series_log1p: constant term must vanish");
  const std::size_t N = x.order();
  Series<V> result(N, x.zero_coeff());
  Series<V> power = x;
  for (std::size_t k = 1; k <= N; ++k) {
    if (k > 1) power = power * x;
    if (power.zero()) break;
    result = result + Rational(k % 2 ? 1 : -1, static_cast<long>(k)) * power;
  }
  return result;
}

}  // namespace hopfflow
