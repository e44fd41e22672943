#include "hopfflow/magnus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "hopfflow/combinatorics.hpp"
#include "hopfflow/evaluate.hpp"
#include "hopfflow/idempotents.hpp"
#include "hopfflow/quadrature.hpp"

namespace hopfflow {

// ---- RBExpr ----

RBExpr RBExpr::a() {
  RBExpr e;
  e.kind_ = Kind::A;
  e.str_ = "a";
  return e;
}

RBExpr RBExpr::R(RBExpr x) {
  RBExpr e;
  e.kind_ = Kind::R;
  e.str_ = "R(" + x.str_ + ")";
  e.left_ = std::make_shared<const RBExpr>(std::move(x));
  return e;
}

RBExpr RBExpr::bracket(RBExpr x, RBExpr y) {
  RBExpr e;
  e.kind_ = Kind::Bracket;
  e.str_ = "[" + x.str_ + "," + y.str_ + "]";
  e.left_ = std::make_shared<const RBExpr>(std::move(x));
  e.right_ = std::make_shared<const RBExpr>(std::move(y));
  return e;
}

RBExpr RBExpr::product(RBExpr x, RBExpr y) {
  RBExpr e;
  e.kind_ = Kind::Product;
  e.str_ = x.str_ + " " + y.str_;
  e.left_ = std::make_shared<const RBExpr>(std::move(x));
  e.right_ = std::make_shared<const RBExpr>(std::move(y));
  return e;
}

std::size_t RBExpr::degree() const {
  switch (kind_) {
    case Kind::A: return 1;
    case Kind::R: return left_->degree();
    default: return left_->degree() + right_->degree();
  }
}

RBCombination::RBCombination(const RBExpr& e, const Rational& c) { add(e, c); }

void RBCombination::add(const RBExpr& e, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(e.str());
  if (it == terms_.end()) {
    terms_.emplace(e.str(), std::make_pair(e, c));
    return;
  }
  it->second.second += c;
  if (it->second.second == 0) terms_.erase(it);
}

RBCombination& RBCombination::operator+=(const RBCombination& o) {
  for (const auto& [k, t] : o.terms_) add(t.first, t.second);
  return *this;
}

RBCombination operator*(const Rational& c, const RBCombination& x) {
  RBCombination r;
  for (const auto& [k, t] : x.terms_) r.add(t.first, c * t.second);
  return r;
}

std::string RBCombination::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, t] : terms_) {
    if (!out.empty()) out += " + ";
    out += to_string(t.second) + " " + k;
  }
  return out;
}

namespace {

bool before(const RBExpr& x, const RBExpr& y) {
  if (x.kind() != y.kind()) return x.kind() < y.kind();
  return x.str() < y.str();
}

}  // namespace

RBCombination bracket(const RBCombination& x, const RBCombination& y) {
  RBCombination r;
  for (const auto& [kx, tx] : x.terms())
    for (const auto& [ky, ty] : y.terms()) {
      if (kx == ky) continue;
      Rational c = tx.second * ty.second;
      if (before(tx.first, ty.first))
        r.add(RBExpr::bracket(tx.first, ty.first), c);
      else
        r.add(RBExpr::bracket(ty.first, tx.first), -c);
    }
  return r;
}

RBCombination apply_R(const RBCombination& x) {
  RBCombination r;
  for (const auto& [k, t] : x.terms()) r.add(RBExpr::R(t.first), t.second);
  return r;
}

std::vector<RBCombination> chi_zero_terms(std::size_t N) {
  std::vector<RBCombination> chi(N + 1);
  if (N == 0) return chi;
  chi[1] = RBCombination(RBExpr::a());
  const auto b = bernoulli_numbers(static_cast<unsigned>(N));
  std::vector<RBCombination> Rchi(N + 1);
  Rchi[1] = apply_R(chi[1]);
  for (std::size_t n = 2; n <= N; ++n) {
    // Σ_k b_k Σ_{n_1+…+n_k = n−1} [Rχ_{n_1},[…,[Rχ_{n_k},a]]]
    for (const auto& comp : compositions(static_cast<unsigned>(n - 1))) {
      const std::size_t k = comp.size();
      Rational bk = b[k] / factorial(static_cast<unsigned>(k));
      if (bk == 0) continue;
      RBCombination y(RBExpr::a());
      for (std::size_t j = k; j-- > 0;) y = bracket(Rchi[comp[j]], y);
      chi[n] += bk * y;
    }
    Rchi[n] = apply_R(chi[n]);
  }
  return chi;
}

std::vector<RBCombination> omega_terms(std::size_t N) {
  if (N > 5) throw DegreeOutOfRange("omega_terms: N must be at most 5");
  auto chi = chi_zero_terms(N);
  std::vector<RBCombination> out(N + 1);
  for (std::size_t n = 1; n <= N; ++n) out[n] = apply_R(chi[n]);
  return out;
}

// ---- Chen ↔ Magnus ----

namespace {

std::vector<FreePoly> composition_table(std::size_t N, bool log_side) {
  std::vector<FreePoly> out(N + 1);
  for (std::size_t n = 1; n <= N; ++n)
    for (const auto& comp : compositions(static_cast<unsigned>(n))) {
      const auto k = static_cast<long>(comp.size());
      Rational c = log_side ? Rational(k % 2 ? 1 : -1, k) : 1 / factorial(static_cast<unsigned>(k));
      std::vector<Letter> w;
      for (unsigned l : comp) w.push_back(l - 1);
      out[n].add_term(Word(w), c);
    }
  return out;
}

}  // namespace

std::vector<FreePoly> chen_to_magnus(std::size_t N) { return composition_table(N, true); }
std::vector<FreePoly> magnus_to_chen(std::size_t N) { return composition_table(N, false); }

FreePoly substitute_letters(const FreePoly& p, const std::vector<FreePoly>& images) {
  return evaluate(p, images, FreePoly::scalar(1), FreePoly(),
                  [](const Rational& c, const FreePoly& v) { return c * v; });
}

// ---- SampledMatrixFn ----

SampledMatrixFn::SampledMatrixFn(std::size_t k, std::function<Eigen::MatrixXd(double)> f, std::string name)
    : k_(k), f_(std::move(f)), name_(std::move(name)) {}

SampledMatrixFn SampledMatrixFn::polynomial(std::vector<Eigen::MatrixXd> coeffs, std::string name) {
  if (coeffs.empty()) throw ShapeMismatch("polynomial: no coefficients");
  const auto k = static_cast<std::size_t>(coeffs[0].rows());
  for (const auto& c : coeffs)
    if (c.rows() != static_cast<Eigen::Index>(k) || c.cols() != static_cast<Eigen::Index>(k))
      throw ShapeMismatch("polynomial: coefficients must be square of one size");
  return SampledMatrixFn(
      k,
      [coeffs](double t) {
        Eigen::MatrixXd acc = coeffs.back();
        for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = (acc * t + coeffs[i]).eval();
        return acc;
      },
      std::move(name));
}

SampledMatrixFn SampledMatrixFn::constant(const Eigen::MatrixXd& A) { return polynomial({A}, "constant"); }

SampledMatrixFn SampledMatrixFn::airy() {
  Eigen::MatrixXd c0(2, 2), c1(2, 2);
  c0 << 0, 1, 0, 0;
  c1 << 0, 0, -1, 0;
  return polynomial({c0, c1}, "airy");
}

SampledMatrixFn SampledMatrixFn::preset(const std::string& name) {
  if (name == "airy") return airy();
  if (name == "rotation") {
    Eigen::MatrixXd A(2, 2);
    A << 0, 1, -1, 0;
    auto f = constant(A);
    return SampledMatrixFn(2, [f](double t) { return f(t); }, "rotation");
  }
  if (name == "commuting") {
    Eigen::MatrixXd A(2, 2);
    A << 1, 2, 0, -1;
    return SampledMatrixFn(2, [A](double t) { return Eigen::MatrixXd(std::cos(t) * A); }, "commuting");
  }
  if (name == "shear") {
    Eigen::MatrixXd c0(2, 2), c1(2, 2);
    c0 << 0, 0, 1, 0;
    c1 << 0, 1, 0, 0;
    return polynomial({c0, c1}, "shear");
  }
  throw DomainError("unknown system preset: " + name);
}

std::vector<std::string> SampledMatrixFn::preset_names() { return {"airy", "commuting", "rotation", "shear"}; }

Eigen::MatrixXd SampledMatrixFn::operator()(double t) const { return f_(t); }

// ---- integrators ----

namespace {

std::size_t step_count(double t0, double t1, double h) {
  if (!(h > 0)) throw DomainError("step size must be positive");
  if (!(t1 >= t0)) throw DomainError("need t1 >= t0");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((t1 - t0) / h - 1e-12)));
}

void check_finite(const Eigen::MatrixXd& M, double t, const char* what) {
  if (!M.allFinite()) throw StepRejected(fmt::format("{}: non-finite value at t = {}", what, t), t);
}

FlowResult start_flow(const SampledMatrixFn& A, double t0, std::string method) {
  FlowResult r;
  r.method = std::move(method);
  r.t.push_back(t0);
  r.F.push_back(Eigen::MatrixXd::Identity(A.size(), A.size()));
  r.det.push_back(1.0);
  r.steps.push_back(0);
  return r;
}

void push_flow(FlowResult& r, double t, Eigen::MatrixXd F) {
  r.t.push_back(t);
  r.det.push_back(F.determinant());
  r.F.push_back(std::move(F));
  r.steps.push_back(r.steps.back() + 1);
}

const double kGaussOffset = std::sqrt(3.0) / 6.0;

}  // namespace

Eigen::MatrixXd magnus4_step(const SampledMatrixFn& A, double s, double h) {
  Eigen::MatrixXd A1 = A(s + (0.5 - kGaussOffset) * h), A2 = A(s + (0.5 + kGaussOffset) * h);
  Eigen::MatrixXd Om = 0.5 * h * (A1 + A2) + (std::sqrt(3.0) / 12.0) * h * h * (A2 * A1 - A1 * A2);
  check_finite(Om, s, "magnus_solve");
  return Om.exp();
}

FlowResult magnus_solve(const SampledMatrixFn& A, double t0, double t1, double h, int order) {
  if (order != 2 && order != 4) throw DomainError("magnus_solve: order must be 2 or 4");
  const std::size_t n = step_count(t0, t1, h);
  const double dt = (t1 - t0) / static_cast<double>(n);
  FlowResult r = start_flow(A, t0, order == 2 ? "magnus2" : "magnus4");
  Eigen::MatrixXd F = r.F.back();
  for (std::size_t i = 0; i < n; ++i) {
    double s = t0 + static_cast<double>(i) * dt;
    Eigen::MatrixXd E;
    if (order == 2) {
      Eigen::MatrixXd Om = dt * A(s + 0.5 * dt);
      check_finite(Om, s, "magnus_solve");
      E = Om.exp();
    } else {
      E = magnus4_step(A, s, dt);
    }
    F = E * F;
    check_finite(F, s, "magnus_solve");
    push_flow(r, i + 1 == n ? t1 : s + dt, F);
  }
  return r;
}

FlowResult dyson_solve(const SampledMatrixFn& A, double t0, double t1, double h, std::size_t depth) {
  if (depth == 0) throw DomainError("dyson_solve: depth must be at least 1");
  const std::size_t n = step_count(t0, t1, h);
  const double dt = (t1 - t0) / static_cast<double>(n);
  const auto rule = gauss_legendre(std::max<std::size_t>(8, depth + 2));
  const Eigen::MatrixXd S = integration_matrix(rule.nodes);
  const std::size_t m = rule.nodes.size(), k = A.size();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(k, k);
  FlowResult r = start_flow(A, t0, fmt::format("dyson:{}", depth));
  Eigen::MatrixXd F = r.F.back();
  std::vector<Eigen::MatrixXd> An(m), U(m), next(m);
  for (std::size_t i = 0; i < n; ++i) {
    double s = t0 + static_cast<double>(i) * dt;
    for (std::size_t j = 0; j < m; ++j) An[j] = A(s + rule.nodes[j] * dt);
    // After d sweeps U holds the partial sum with d iterated integrals.
    std::fill(U.begin(), U.end(), I);
    for (std::size_t d = 1; d < depth; ++d) {
      for (std::size_t p = 0; p < m; ++p) {
        next[p] = I;
        for (std::size_t j = 0; j < m; ++j) next[p] += dt * S(p, j) * (An[j] * U[j]);
      }
      std::swap(U, next);
    }
    Eigen::MatrixXd step = I;
    for (std::size_t j = 0; j < m; ++j) step += dt * rule.weights[j] * (An[j] * U[j]);
    F = step * F;
    check_finite(F, s, "dyson_solve");
    push_flow(r, i + 1 == n ? t1 : s + dt, F);
  }
  return r;
}

FlowResult solve_flow(const SampledMatrixFn& A, double t0, double t1, double h, const std::string& method) {
  if (method == "magnus4") return magnus_solve(A, t0, t1, h, 4);
  if (method == "magnus2") return magnus_solve(A, t0, t1, h, 2);
  if (method.rfind("dyson:", 0) == 0) {
    const std::string d = method.substr(6);
    if (!d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return dyson_solve(A, t0, t1, h, std::stoul(d));
  }
  throw DomainError(fmt::format("unknown method '{}'", method));
}

Eigen::MatrixXd reference_flow(const SampledMatrixFn& A, double t0, double t1, double tol) {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  const auto k = static_cast<Eigen::Index>(A.size());
  State y(static_cast<std::size_t>(k * k), 0.0);
  Eigen::Map<Eigen::MatrixXd>(y.data(), k, k).setIdentity();
  auto sys = [&](const State& x, State& dx, double t) {
    dx.resize(x.size());
    Eigen::Map<Eigen::MatrixXd>(dx.data(), k, k) = A(t) * Eigen::Map<const Eigen::MatrixXd>(x.data(), k, k);
  };
  if (t1 != t0)
    odeint::integrate_adaptive(odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>()), sys, y, t0, t1,
                               (t1 - t0) / 64);
  return Eigen::Map<Eigen::MatrixXd>(y.data(), k, k);
}

Trajectory affine_solve(const SampledMatrixFn& A, const std::function<Eigen::VectorXd(double)>& b,
                        const Eigen::VectorXd& x0, double t0, double t1, double h) {
  const auto k = static_cast<Eigen::Index>(A.size());
  if (x0.size() != k) throw ShapeMismatch("affine_solve: x0 has the wrong length");
  const std::size_t n = step_count(t0, t1, h);
  const double dt = (t1 - t0) / static_cast<double>(n);
  const auto rule = gauss_legendre(6);
  Trajectory tr;
  tr.t.push_back(t0);
  tr.x.push_back(x0);
  Eigen::VectorXd x = x0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = t0 + static_cast<double>(i) * dt, e = s + dt;
    Eigen::VectorXd nx = magnus4_step(A, s, dt) * x;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      double sj = s + rule.nodes[j] * dt;
      Eigen::VectorXd bj = b(sj);
      if (bj.size() != k) throw ShapeMismatch("affine_solve: b has the wrong length");
      nx += dt * rule.weights[j] * (magnus4_step(A, sj, e - sj) * bj);
    }
    x = nx;
    tr.t.push_back(i + 1 == n ? t1 : e);
    tr.x.push_back(x);
  }
  return tr;
}

// ---- Strichartz / Heaviside quadratures ----

namespace {

struct SimplexPoint {
  std::vector<double> t;  // t_1 > t_2 > … > t_n
  double weight;
};

// Collapsed Gauss–Legendre on {t > t_1 > … > t_n > 0}.
std::vector<SimplexPoint> simplex_points(std::size_t n, double t, std::size_t nodes) {
  const auto rule = gauss_legendre(nodes);
  std::vector<SimplexPoint> pts;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    SimplexPoint p{std::vector<double>(n), 1.0};
    double upper = t;
    for (std::size_t i = 0; i < n; ++i) {
      p.weight *= upper * rule.weights[idx[i]];
      upper *= rule.nodes[idx[i]];
      p.t[i] = upper;
    }
    pts.push_back(std::move(p));
    std::size_t d = 0;
    while (d < n && ++idx[d] == nodes) idx[d++] = 0;
    if (d == n) break;
  }
  return pts;
}

Eigen::MatrixXd left_nested(const std::vector<Eigen::MatrixXd>& v, const std::vector<unsigned>& order) {
  Eigen::MatrixXd acc = v[order[0]];
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& y = v[order[i]];
    acc = (acc * y - y * acc).eval();
  }
  return acc;
}

}  // namespace

Eigen::MatrixXd strichartz_term(const SampledMatrixFn& a, std::size_t n, double t, std::size_t nodes,
                                double budget) {
  if (n == 0) throw DomainError("strichartz_term: n must be positive");
  double cost = std::pow(static_cast<double>(nodes), static_cast<double>(n)) *
                factorial(static_cast<unsigned>(n)).get_d();
  if (cost > budget)
    throw QuadratureBudgetExceeded(fmt::format("strichartz_term: {} evaluations exceed budget {}", cost, budget));
  const auto k = static_cast<Eigen::Index>(a.size());
  std::vector<std::pair<std::vector<unsigned>, double>> perms;
  for (const auto& [sigma, c] : descent_pi1(static_cast<unsigned>(n))) {
    std::vector<unsigned> order;
    for (unsigned i : sigma.images()) order.push_back(i - 1);
    perms.emplace_back(order, Rational(c / Rational(static_cast<long>(n))).get_d());
  }
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k, k);
  std::vector<Eigen::MatrixXd> vals(n);
  for (const auto& p : simplex_points(n, t, nodes)) {
    for (std::size_t i = 0; i < n; ++i) vals[i] = a(p.t[i]);
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(k, k);
    for (const auto& [order, c] : perms) local += c * left_nested(vals, order);
    acc += p.weight * local;
  }
  return acc;
}

Eigen::MatrixXd heaviside_omega3(const SampledMatrixFn& a, double t, std::size_t nodes) {
  const auto k = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(k, k);
  const auto pts = simplex_points(3, t, nodes);
  std::vector<unsigned> perm{0, 1, 2};
  do {
    // perm lists the variables in decreasing time: t_{perm[0]} > t_{perm[1]} > t_{perm[2]}.
    std::vector<int> rank(3);
    for (int r = 0; r < 3; ++r) rank[perm[r]] = r;
    double th12 = rank[0] < rank[1] ? 1.0 : 0.0, th23 = rank[1] < rank[2] ? 1.0 : 0.0;
    // The Dynkin rewrite a₁a₂a₃ → [[a₁,a₂],a₃] multiplies a degree-3 Lie element by 3.
    double c = (th12 * th23 - 0.5 * th12 - 0.5 * th23 + 1.0 / 3.0) / 3.0;
    if (c == 0.0) continue;
    for (const auto& p : pts) {
      std::vector<Eigen::MatrixXd> v(3);
      for (int r = 0; r < 3; ++r) v[perm[r]] = a(p.t[r]);
      acc += (p.weight * c) * left_nested(v, {0, 1, 2});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

}  // namespace hopfflow
