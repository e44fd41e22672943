#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hopfflow/errors.hpp"
#include "hopfflow/freetensor.hpp"
#include "hopfflow/rational.hpp"
#include "hopfflow/rotabaxter.hpp"

namespace hopfflow {

// ---- symbolic Rota–Baxter expressions ----

// Expression in one letter a, a linear map R, brackets and products.
class RBExpr {
 public:
  // Declaration order is the rank used to orient brackets: R-nodes first,
  // then brackets, then products, then the letter.
  enum class Kind { R, Bracket, Product, A };

  static RBExpr a();
  static RBExpr R(RBExpr x);
  static RBExpr bracket(RBExpr x, RBExpr y);
  static RBExpr product(RBExpr x, RBExpr y);

  Kind kind() const { return kind_; }
  const RBExpr& left() const { return *left_; }
  const RBExpr& right() const { return *right_; }
  std::size_t degree() const;
  // e.g. "R([R(a),a])"
  const std::string& str() const { return str_; }

 private:
  RBExpr() = default;
  Kind kind_ = Kind::A;
  std::shared_ptr<const RBExpr> left_, right_;
  std::string str_;
};

// Linear combination of expressions keyed by their string form.
class RBCombination {
 public:
  RBCombination() = default;
  explicit RBCombination(const RBExpr& e, const Rational& c = 1);

  const std::map<std::string, std::pair<RBExpr, Rational>>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  void add(const RBExpr& e, const Rational& c);
  RBCombination& operator+=(const RBCombination& o);
  friend RBCombination operator*(const Rational& c, const RBCombination& x);
  // e.g. "-1/2 R([R(a),a])"
  std::string str() const;

 private:
  std::map<std::string, std::pair<RBExpr, Rational>> terms_;
};

// [x,y] extended bilinearly; oriented by rank then string, [x,x] = 0.
RBCombination bracket(const RBCombination& x, const RBCombination& y);
RBCombination apply_R(const RBCombination& x);

// χ⁰_n(a) for n = 1..N from the weight-zero recursion; index 0 is empty.
std::vector<RBCombination> chi_zero_terms(std::size_t N);
// Ω_n = R(χ⁰_n), n = 1..N ≤ 5; index 0 is empty.
std::vector<RBCombination> omega_terms(std::size_t N);

template <RBInstance I>
typename I::value_type evaluate(const RBExpr& e, const I& inst, const typename I::value_type& a) {
  switch (e.kind()) {
    case RBExpr::Kind::A: return a;
    case RBExpr::Kind::R: return inst.apply(evaluate(e.left(), inst, a));
    case RBExpr::Kind::Bracket: {
      auto x = evaluate(e.left(), inst, a), y = evaluate(e.right(), inst, a);
      return x * y - y * x;
    }
    case RBExpr::Kind::Product: return evaluate(e.left(), inst, a) * evaluate(e.right(), inst, a);
  }
  return a;
}

template <RBInstance I>
typename I::value_type evaluate(const RBCombination& c, const I& inst, const typename I::value_type& a) {
  auto acc = inst.zero();
  for (const auto& [key, term] : c.terms()) acc = acc + term.second * evaluate(term.first, inst, a);
  return acc;
}

// ---- Chen ↔ Magnus ----
// Letter l−1 stands for (Ra)^{[l]} in chen_to_magnus and for Ω_l in
// magnus_to_chen; entry n is homogeneous of grade n.

// Ω_n = Σ_k (−1)^{k+1}/k Σ_{l_1+…+l_k=n} (Ra)^{[l_1]}⋯(Ra)^{[l_k]}
std::vector<FreePoly> chen_to_magnus(std::size_t N);
// (Ra)^{[n]} = Σ_k 1/k! Σ_{l_1+…+l_k=n} Ω_{l_1}⋯Ω_{l_k}
std::vector<FreePoly> magnus_to_chen(std::size_t N);
// Replaces letter i of p by images[i] (index 0 of images is letter 0).
FreePoly substitute_letters(const FreePoly& p, const std::vector<FreePoly>& images);

// ---- numerics ----

class SampledMatrixFn {
 public:
  SampledMatrixFn(std::size_t k, std::function<Eigen::MatrixXd(double)> f, std::string name = "custom");
  // Σ_i C_i t^i
  static SampledMatrixFn polynomial(std::vector<Eigen::MatrixXd> coeffs, std::string name = "polynomial");
  static SampledMatrixFn constant(const Eigen::MatrixXd& A);
  // [[0,1],[−t,0]]
  static SampledMatrixFn airy();
  // airy, rotation, commuting, shear
  static SampledMatrixFn preset(const std::string& name);
  static std::vector<std::string> preset_names();

  Eigen::MatrixXd operator()(double t) const;
  std::size_t size() const { return k_; }
  const std::string& name() const { return name_; }

 private:
  std::size_t k_;
  std::function<Eigen::MatrixXd(double)> f_;
  std::string name_;
};

struct FlowResult {
  std::vector<double> t;
  // Fundamental matrix F(t_i, t_0); F at t_0 is the identity.
  std::vector<Eigen::MatrixXd> F;
  std::string method;
  std::vector<double> det;
  std::vector<std::size_t> steps;
};

// Steps of size (t1−t0)/ceil((t1−t0)/h). Order 2 uses the midpoint, order 4
// the two-point Gauss combination ½h(A₁+A₂) + (√3/12)h²[A₂,A₁].
FlowResult magnus_solve(const SampledMatrixFn& A, double t0, double t1, double h, int order);
// Per step, the Dyson partial sum through `depth` iterated integrals, by
// Picard iteration on Gauss nodes.
FlowResult dyson_solve(const SampledMatrixFn& A, double t0, double t1, double h, std::size_t depth);
// "magnus4", "magnus2" or "dyson:<depth>".
FlowResult solve_flow(const SampledMatrixFn& A, double t0, double t1, double h, const std::string& method);
// F(t1, t0) from adaptive Dormand–Prince on the entries, abs/rel tolerance tol.
Eigen::MatrixXd reference_flow(const SampledMatrixFn& A, double t0, double t1, double tol = 1e-12);
// One order-4 Magnus step from s to s + h.
Eigen::MatrixXd magnus4_step(const SampledMatrixFn& A, double s, double h);

struct Trajectory {
  std::vector<double> t;
  std::vector<Eigen::VectorXd> x;
};

// x' = A(t)x + b(t); x(t) = G(t,t0)x0 + ∫G(t,s)b(s)ds with G from order-4 Magnus.
Trajectory affine_solve(const SampledMatrixFn& A, const std::function<Eigen::VectorXd(double)>& b,
                        const Eigen::VectorXd& x0, double t0, double t1, double h);

// Ω_n(t) = Σ_σ (−1)^{d(σ)}/(n² binom(n−1,d(σ))) ∫_{t>t_1>…>t_n>0}
//   [[…[a(t_{σ1}),a(t_{σ2})]…],a(t_{σn})], by collapsed Gauss–Legendre with
// `nodes` points per axis. Throws QuadratureBudgetExceeded when
// nodes^n · n! exceeds `budget`.
Eigen::MatrixXd strichartz_term(const SampledMatrixFn& a, std::size_t n, double t, std::size_t nodes = 24,
                                double budget = 5e7);
// Ω_3 = ⅓∫_{[0,t]³}(Θ₁₂Θ₂₃ − ½Θ₁₂ − ½Θ₂₃ + ⅓)[[a₁,a₂],a₃], split into the six
// ordering simplices.
Eigen::MatrixXd heaviside_omega3(const SampledMatrixFn& a, double t, std::size_t nodes = 24);

}  // namespace hopfflow
