#pragma once

#include <concepts>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hopfflow/carriers.hpp"
#include "hopfflow/series.hpp"

namespace hopfflow {

using Rng = std::mt19937_64;

// A Rota–Baxter algebra of weight θ:
//   R(a)R(b) = R(R(a)b + aR(b) − θab).
template <class I>
concept RBInstance = requires(const I& inst, const typename I::value_type& a, Rng& rng) {
  { inst.apply(a) } -> std::convertible_to<typename I::value_type>;
  { inst.weight() } -> std::convertible_to<Rational>;
  { inst.commutative() } -> std::convertible_to<bool>;
  { inst.zero() } -> std::convertible_to<typename I::value_type>;
  { inst.random(rng) } -> std::convertible_to<typename I::value_type>;
  { inst.name() } -> std::convertible_to<std::string>;
  { a + a } -> std::convertible_to<typename I::value_type>;
  { a - a } -> std::convertible_to<typename I::value_type>;
  { a * a } -> std::convertible_to<typename I::value_type>;
  { Rational(1) * a } -> std::convertible_to<typename I::value_type>;
};

template <class I>
concept UnitalRBInstance = RBInstance<I> && requires(const I& inst) {
  { inst.one() } -> std::convertible_to<typename I::value_type>;
};

// ---- instances ----

// Indefinite integral on a uniform grid of [0, T], weight 0. Cumulative
// composite Simpson at even nodes; odd nodes add a four-point cubic panel, so
// the rule is exact on cubics at every node.
class RiemannInstance {
 public:
  using value_type = SampledFn;

  RiemannInstance(double T, std::size_t intervals, std::size_t k = 1);
  const std::vector<double>& grid() const { return grid_; }
  std::size_t size() const { return k_; }

  SampledFn sample(const std::function<Eigen::MatrixXd(double)>& f) const;
  SampledFn sample_scalar(const std::function<double(double)>& f) const;

  SampledFn apply(const SampledFn& f) const;
  Rational weight() const { return 0; }
  bool commutative() const { return k_ == 1; }
  SampledFn zero() const;
  SampledFn one() const;
  // Entries are random polynomials of degree ≤ 2 with coefficients in [-1,1].
  SampledFn random(Rng& rng) const;
  std::string name() const { return "riemann"; }

 private:
  std::vector<double> grid_;
  double h_;
  std::size_t k_;
};

// Summation operator Z(f)(x) = Σ_{n≥1} θ f(x + θn) on geometric functions;
// recorded with weight −θ.
class SummationInstance {
 public:
  using value_type = GeomSum;

  explicit SummationInstance(const Rational& step);
  const Rational& step() const { return step_; }

  GeomSum apply(const GeomSum& f) const;
  // Finite-difference partner δf(x) = (f(x−θ) − f(x))/θ, a skewderivation of weight −θ.
  GeomSum delta(const GeomSum& f) const;
  Rational weight() const { return -step_; }
  bool commutative() const { return true; }
  GeomSum zero() const { return {}; }
  GeomSum one() const { return GeomSum::constant(1); }
  GeomSum random(Rng& rng) const;
  std::string name() const { return "summation"; }

 private:
  Rational step_;
};

// Jackson operators on polynomials without constant term:
//   Pq      P_q[x^m] = q^m/(1−q^m) x^m, weight −1
//   PqHat   id + P_q, weight 1
//   JBar    (1−q)(id + P_q), weight 1−q
class JacksonInstance {
 public:
  using value_type = QPoly;
  enum class Mode { Pq, PqHat, JBar };

  explicit JacksonInstance(const Rational& q, Mode mode = Mode::JBar);
  const Rational& q() const { return q_; }
  Mode mode() const { return mode_; }

  QPoly apply(const QPoly& f) const;
  // Inverse of J̄ on x^m: [m]_q x^m, a skewderivation of weight 1−q.
  QPoly delta(const QPoly& f) const;
  Rational weight() const;
  bool commutative() const { return true; }
  QPoly zero() const { return {}; }
  QPoly one() const { return QPoly::monomial(0); }
  QPoly random(Rng& rng) const;
  std::string name() const { return "jackson"; }

 private:
  Rational multiplier(unsigned m) const;
  Rational q_;
  Mode mode_;
};

// Pairs of k×k matrices, R(a,b) = θ(a,0).
class ProjectionInstance {
 public:
  using value_type = MatPair;

  ProjectionInstance(std::size_t k, const Rational& theta);
  std::size_t size() const { return k_; }

  MatPair apply(const MatPair& x) const { return {theta_ * x.first, QMatrix(k_, k_)}; }
  Rational weight() const { return theta_; }
  bool commutative() const { return k_ == 1; }
  MatPair zero() const { return {QMatrix(k_, k_), QMatrix(k_, k_)}; }
  MatPair one() const { return {QMatrix::identity(k_), QMatrix::identity(k_)}; }
  MatPair random(Rng& rng) const;
  std::string name() const { return "projection"; }

 private:
  std::size_t k_;
  Rational theta_;
};

// k×k matrices, R = θ·(projection onto upper triangular including the
// diagonal, along the strictly lower triangular part).
class TriangularInstance {
 public:
  using value_type = QMatrix;

  TriangularInstance(std::size_t k, const Rational& theta);
  std::size_t size() const { return k_; }

  QMatrix apply(const QMatrix& x) const;
  Rational weight() const { return theta_; }
  bool commutative() const { return k_ == 1; }
  QMatrix zero() const { return QMatrix(k_, k_); }
  QMatrix one() const { return QMatrix::identity(k_); }
  QMatrix random(Rng& rng) const;
  std::string name() const { return "triangular"; }

 private:
  std::size_t k_;
  Rational theta_;
};

// R̃ = θ·id − R, again Rota–Baxter of weight θ.
template <RBInstance I>
class TildeInstance {
 public:
  using value_type = typename I::value_type;

  explicit TildeInstance(I base) : base_(std::move(base)) {}
  value_type apply(const value_type& x) const { return base_.weight() * x - base_.apply(x); }
  Rational weight() const { return base_.weight(); }
  bool commutative() const { return base_.commutative(); }
  value_type zero() const { return base_.zero(); }
  value_type one() const
    requires UnitalRBInstance<I>
  {
    return base_.one();
  }
  value_type random(Rng& rng) const { return base_.random(rng); }
  std::string name() const { return base_.name() + "~"; }
  const I& base() const { return base_; }

 private:
  I base_;
};

// Coefficientwise lift of R to A[[t]] truncated at order N.
template <RBInstance I>
class SeriesLift {
 public:
  using value_type = Series<typename I::value_type>;
  using base_value = typename I::value_type;

  SeriesLift(I base, std::size_t N) : base_(std::move(base)), N_(N) {}
  value_type apply(const value_type& x) const {
    value_type r(x.order(), base_.zero());
    for (std::size_t k = 0; k <= x.order(); ++k)
      if (!is_zero(x[k])) r[k] = base_.apply(x[k]);
    return r;
  }
  Rational weight() const { return base_.weight(); }
  bool commutative() const { return base_.commutative(); }
  value_type zero() const { return value_type(N_, base_.zero()); }
  value_type one() const
    requires UnitalRBInstance<I>
  {
    return value_type::constant(N_, base_.zero(), base_.one());
  }
  // t·(random element); filtration degree one.
  value_type random(Rng& rng) const {
    value_type r(N_, base_.zero());
    if (N_ >= 1) r[1] = base_.random(rng);
    return r;
  }
  value_type constant(const base_value& v) const { return value_type::constant(N_, base_.zero(), v); }
  value_type monomial(const base_value& v, std::size_t k) const {
    return value_type::monomial(N_, base_.zero(), v, k);
  }
  std::size_t filtration_shift() const { return 0; }
  std::size_t order() const { return N_; }
  std::string name() const { return base_.name() + "[[t]]"; }
  const I& base() const { return base_; }

 private:
  I base_;
  std::size_t N_;
};

// Polynomial integration on k×k rational matrix series:
//   R(Σ a_n t^n) = Σ a_n t^{n+1}/(n+1), weight 0.
class IntegrationSeries {
 public:
  using value_type = Series<QMatrix>;
  using base_value = QMatrix;

  IntegrationSeries(std::size_t k, std::size_t N) : k_(k), N_(N) {}
  value_type apply(const value_type& x) const;
  Rational weight() const { return 0; }
  bool commutative() const { return k_ == 1; }
  value_type zero() const { return value_type(N_, QMatrix(k_, k_)); }
  value_type one() const { return value_type::constant(N_, QMatrix(k_, k_), QMatrix::identity(k_)); }
  // Random matrix polynomial of degree ≤ 2 in t.
  value_type random(Rng& rng) const;
  value_type constant(const QMatrix& v) const { return value_type::constant(N_, QMatrix(k_, k_), v); }
  value_type monomial(const QMatrix& v, std::size_t k) const {
    return value_type::monomial(N_, QMatrix(k_, k_), v, k);
  }
  std::size_t filtration_shift() const { return 1; }
  std::size_t order() const { return N_; }
  std::size_t size() const { return k_; }
  std::string name() const { return "integration[[t]]"; }

 private:
  std::size_t k_, N_;
};

QMatrix random_qmatrix(std::size_t k, Rng& rng, int range = 4, int den = 3);

// ---- generic operations ----

template <class V>
V commutator(const V& a, const V& b) {
  return a * b - b * a;
}

// R(a)R(b) − R(R(a)b) − R(aR(b)) + θR(ab)
template <RBInstance I>
typename I::value_type rb_residual(const I& inst, const typename I::value_type& a, const typename I::value_type& b) {
  auto Ra = inst.apply(a), Rb = inst.apply(b);
  return Ra * Rb - inst.apply(Ra * b) - inst.apply(a * Rb) + inst.weight() * inst.apply(a * b);
}

// [R(x),R(y)] + θR([x,y]) − R([R(x),y] + [x,R(y)])
template <RBInstance I>
typename I::value_type rb_lie_residual(const I& inst, const typename I::value_type& x,
                                       const typename I::value_type& y) {
  auto Rx = inst.apply(x), Ry = inst.apply(y);
  return commutator(Rx, Ry) + inst.weight() * inst.apply(commutator(x, y)) -
         inst.apply(commutator(Rx, y) + commutator(x, Ry));
}

// a *_R b = aR(b) + R(a)b − θab
template <RBInstance I>
typename I::value_type double_product(const I& inst, const typename I::value_type& a,
                                      const typename I::value_type& b) {
  return a * inst.apply(b) + inst.apply(a) * b - inst.weight() * (a * b);
}

// a ·_R b = [a,R(b)] + θba
template <RBInstance I>
typename I::value_type pre_lie(const I& inst, const typename I::value_type& a, const typename I::value_type& b) {
  return commutator(a, inst.apply(b)) + inst.weight() * (b * a);
}

// (a·b)·c − a·(b·c) − (a·c)·b + a·(c·b); zero for a right pre-Lie product.
template <RBInstance I>
typename I::value_type pre_lie_associator_residual(const I& inst, const typename I::value_type& a,
                                                   const typename I::value_type& b,
                                                   const typename I::value_type& c) {
  auto p = [&](const auto& x, const auto& y) { return pre_lie(inst, x, y); };
  return p(p(a, b), c) - p(a, p(b, c)) - p(p(a, c), b) + p(a, p(c, b));
}

template <class V>
struct AtkinsonResult {
  V X, Y;
  // Y(1 − θa)X − 1
  V factorization_residual;
  std::size_t iterations = 0;
};

// Solves X = 1 + R(aX) and Y = 1 + R̃(Ya) by fixed-point iteration in a
// complete filtered carrier; the inputs need filtration(a) + shift ≥ 1.
template <class I>
  requires UnitalRBInstance<I> && requires(const I& i) { i.filtration_shift(); }
AtkinsonResult<typename I::value_type> atkinson_solve(const I& inst, const typename I::value_type& a) {
  if (a.filtration() + inst.filtration_shift() < 1 && !a.zero())
    throw NotFiltered("atkinson_solve: a must have positive filtration degree");
  using V = typename I::value_type;
  const V one = inst.one();
  TildeInstance<I> tilde(inst);
  V X = one, Y = one;
  std::size_t it = 0;
  for (; it <= a.order() + 1; ++it) {
    V nx = one + inst.apply(a * X);
    V ny = one + tilde.apply(Y * a);
    bool stable = (nx == X) && (ny == Y);
    X = std::move(nx);
    Y = std::move(ny);
    if (stable) break;
  }
  V res = Y * (one - inst.weight() * a) * X - one;
  return {X, Y, res, it};
}

}  // namespace hopfflow
