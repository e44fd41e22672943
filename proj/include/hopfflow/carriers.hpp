#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hopfflow/errors.hpp"
#include "hopfflow/qmatrix.hpp"
#include "hopfflow/rational.hpp"

namespace hopfflow {

// Pairs of square rational matrices with componentwise operations.
struct MatPair {
  QMatrix first, second;

  MatPair() = default;
  MatPair(QMatrix a, QMatrix b) : first(std::move(a)), second(std::move(b)) {}

  MatPair& operator+=(const MatPair& o) { first += o.first; second += o.second; return *this; }
  MatPair& operator-=(const MatPair& o) { first -= o.first; second -= o.second; return *this; }
  friend MatPair operator+(MatPair a, const MatPair& b) { return a += b; }
  friend MatPair operator-(MatPair a, const MatPair& b) { return a -= b; }
  friend MatPair operator-(const MatPair& a) { return {-a.first, -a.second}; }
  friend MatPair operator*(const MatPair& a, const MatPair& b) { return {a.first * b.first, a.second * b.second}; }
  friend MatPair operator*(const Rational& c, const MatPair& a) { return {c * a.first, c * a.second}; }
  friend bool operator==(const MatPair& a, const MatPair& b) = default;
  bool is_zero() const { return first.is_zero() && second.is_zero(); }
};

// Finite sums Σ c_r · r^{x/θ} keyed by ratio r ∈ (0,1]; r = 1 is the constant
// function, kept so the carrier has a unit.
class GeomSum {
 public:
  GeomSum() = default;
  static GeomSum term(const Rational& ratio, const Rational& scale);
  static GeomSum constant(const Rational& c) { return term(1, c); }

  const std::map<Rational, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Value at x on the grid of step theta.
  double operator()(double x, double theta) const;

  GeomSum& operator+=(const GeomSum& o);
  GeomSum& operator-=(const GeomSum& o);
  friend GeomSum operator+(GeomSum a, const GeomSum& b) { return a += b; }
  friend GeomSum operator-(GeomSum a, const GeomSum& b) { return a -= b; }
  friend GeomSum operator-(const GeomSum& a) { return Rational(-1) * a; }
  friend GeomSum operator*(const GeomSum& a, const GeomSum& b);
  friend GeomSum operator*(const Rational& c, const GeomSum& a);
  friend bool operator==(const GeomSum& a, const GeomSum& b) = default;
  std::string str() const;

 private:
  void add(const Rational& ratio, const Rational& scale);
  std::map<Rational, Rational> terms_;
};

// Univariate polynomial in x with rational coefficients.
class QPoly {
 public:
  QPoly() = default;
  static QPoly monomial(unsigned degree, const Rational& c = 1);

  const std::map<unsigned, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(unsigned m) const;
  Rational operator()(const Rational& x) const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator-(const QPoly& a) { return Rational(-1) * a; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rational& c, const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) = default;
  std::string str() const;

 private:
  void add(unsigned m, const Rational& c);
  std::map<unsigned, Rational> terms_;
};

// Matrix-valued function sampled on a grid owned by the instance that uses it.
struct SampledFn {
  std::vector<Eigen::MatrixXd> values;

  SampledFn& operator+=(const SampledFn& o);
  SampledFn& operator-=(const SampledFn& o);
  friend SampledFn operator+(SampledFn a, const SampledFn& b) { return a += b; }
  friend SampledFn operator-(SampledFn a, const SampledFn& b) { return a -= b; }
  friend SampledFn operator-(const SampledFn& a) { return Rational(-1) * a; }
  friend SampledFn operator*(const SampledFn& a, const SampledFn& b);
  friend SampledFn operator*(const Rational& c, const SampledFn& a);
  // Largest entry magnitude over all nodes.
  double max_abs() const;
  bool is_zero() const { return max_abs() == 0.0; }
};

// Uniform measure of size for exact carriers; zero iff the element is zero.
inline double magnitude(const QMatrix& m) {
  double s = 0;
  for (double x : m.to_doubles()) s = std::max(s, std::abs(x));
  return s;
}
inline double magnitude(const MatPair& p) { return std::max(magnitude(p.first), magnitude(p.second)); }
double magnitude(const GeomSum& g);
double magnitude(const QPoly& p);
inline double magnitude(const SampledFn& f) { return f.max_abs(); }

inline bool is_zero(const QMatrix& m) { return m.is_zero(); }
inline bool is_zero(const MatPair& m) { return m.is_zero(); }
inline bool is_zero(const GeomSum& g) { return g.is_zero(); }
inline bool is_zero(const QPoly& p) { return p.is_zero(); }
inline bool is_zero(const SampledFn& f) { return f.is_zero(); }

}  // namespace hopfflow
