#include "hopfflow/scheffers.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>
#include <fmt/format.h>

namespace hopfflow {

namespace odeint = boost::numeric::odeint;

RiccatiCoeffs RiccatiCoeffs::constant(double c0, double c1, double c2) {
  return {[c0](double) { return c0; }, [c1](double) { return c1; }, [c2](double) { return c2; }};
}

Eigen::Matrix2d e_plus() { return (Eigen::Matrix2d() << 0, 1, 0, 0).finished(); }
Eigen::Matrix2d h_prime() { return (Eigen::Matrix2d() << 0.5, 0, 0, -0.5).finished(); }
Eigen::Matrix2d e_minus() { return (Eigen::Matrix2d() << 0, 0, -1, 0).finished(); }

Eigen::Matrix2d sl2_generator(const RiccatiCoeffs& c, double t) {
  return c.a0(t) * e_plus() + c.a1(t) * h_prime() + c.a2(t) * e_minus();
}

double mobius(const Eigen::Matrix2d& g, double x) {
  const double inf = std::numeric_limits<double>::infinity();
  if (std::isinf(x)) return g(1, 0) == 0 ? (g(0, 0) * x > 0 ? inf : -inf) : g(0, 0) / g(1, 0);
  double den = g(1, 0) * x + g(1, 1), num = g(0, 0) * x + g(0, 1);
  if (den == 0) return num >= 0 ? inf : -inf;
  return num / den;
}

namespace {

using State = std::array<double, 3>;

std::vector<double> uniform_grid(double t0, double t1, double h) {
  if (!(h > 0)) throw DomainError("step size must be positive");
  if (!(t1 > t0)) throw EmptyGrid("empty time window");
  const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / h - 1e-12));
  std::vector<double> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n);
  t.back() = t1;
  return t;
}

// u-system; u0 comes from `particular` when given, else from the state.
USolution integrate_u(const RiccatiCoeffs& c, const std::function<double(double)>* particular, double t0,
                      double t1, double h, double tol) {
  USolution r;
  r.t = uniform_grid(t0, t1, h);
  auto u0_of = [&](const State& x, double t) { return particular ? (*particular)(t) : x[0]; };
  auto sys = [&](const State& x, State& dx, double t) {
    const double u0 = u0_of(x, t), a2 = c.a2(t);
    dx[0] = particular ? 0.0 : c.rhs(t, u0);
    dx[1] = c.a1(t) + 2 * a2 * u0;
    dx[2] = a2 * std::exp(x[1]);
  };
  auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>());
  State x{0, 0, 0};
  double t = t0, dt = std::min(h, 1e-3);
  auto record = [&] {
    r.u0.push_back(u0_of(x, t));
    r.u1.push_back(x[1]);
    r.u2.push_back(x[2]);
  };
  record();
  for (std::size_t i = 1; i < r.t.size(); ++i) {
    const double target = r.t[i];
    while (t < target) {
      double trial = std::min(dt, target - t);
      bool clipped = trial < dt;
      if (stepper.try_step(sys, x, t, trial) == odeint::success) {
        if (!clipped || trial > dt) dt = trial;
        if (!particular && (!std::isfinite(x[0]) || std::abs(x[0]) > 1e10))
          throw BlowUp(fmt::format("u0 escapes to infinity near t = {}", t), t);
        if (!std::isfinite(x[1]) || !std::isfinite(x[2]))
          throw BlowUp(fmt::format("u-system not finite near t = {}", t), t);
      } else {
        dt = trial;
        if (dt < 1e-14 * (1 + std::abs(t))) throw BlowUp(fmt::format("step size underflow near t = {}", t), t);
      }
    }
    t = target;
    record();
  }
  return r;
}

struct Dual {
  double v = 0, d = 0;
};
Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }

using DualMat = std::array<Dual, 4>;  // row-major 2×2

DualMat mul(const DualMat& A, const DualMat& B) {
  return {A[0] * B[0] + A[1] * B[2], A[0] * B[1] + A[1] * B[3], A[2] * B[0] + A[3] * B[2],
          A[2] * B[1] + A[3] * B[3]};
}

}  // namespace

USolution solve_u_system(const RiccatiCoeffs& c, double t0, double t1, double h, double tol) {
  return integrate_u(c, nullptr, t0, t1, h, tol);
}

USolution solve_u_system(const RiccatiCoeffs& c, const std::function<double(double)>& particular, double t0,
                         double t1, double h, double tol) {
  if (std::abs(particular(t0)) > 1e-12) throw DomainError("particular solution must vanish at t0");
  return integrate_u(c, &particular, t0, t1, h, tol);
}

std::vector<double> riccati_general(const USolution& u, double x0) {
  const bool at_inf = std::isinf(x0);
  const std::size_t n = u.t.size();
  std::vector<double> x(n), den(n);
  for (std::size_t i = 0; i < n; ++i) den[i] = at_inf ? -u.u2[i] : 1 - u.u2[i] * x0;
  // At t0 the ∞ solution sits at ∞; the sign reference is the next node.
  const std::size_t first = at_inf ? 1 : 0;
  for (std::size_t i = first + 1; i < n; ++i) {
    if (den[i] == 0 || (den[i] > 0) != (den[first] > 0)) {
      double tc = u.t[i];
      if (den[i] != den[i - 1]) tc = u.t[i - 1] + (u.t[i] - u.t[i - 1]) * den[i - 1] / (den[i - 1] - den[i]);
      throw PoleCrossing(fmt::format("solution from x0 = {} reaches infinity near t = {}", x0, tc), tc);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::exp(u.u1[i]);
    if (at_inf)
      x[i] = i == 0 ? x0 : u.u0[i] - e / u.u2[i];
    else
      x[i] = e * x0 / den[i] + u.u0[i];
  }
  return x;
}

double ode_residual(const RiccatiCoeffs& c, const std::vector<double>& t, const std::vector<double>& x) {
  if (t.size() != x.size()) throw ShapeMismatch("grid and trajectory differ in length");
  if (t.size() < 5) throw EmptyGrid("need at least five nodes");
  const double h = t[1] - t[0];
  double worst = 0;
  for (std::size_t k = 2; k + 2 < t.size(); ++k) {
    if (std::abs(t[k + 1] - t[k] - h) > 1e-9 * (1 + std::abs(h)))
      throw DomainError("residual check needs a uniform grid");
    bool finite = true;
    for (std::size_t j = k - 2; j <= k + 2; ++j) finite = finite && std::isfinite(x[j]);
    if (!finite) continue;
    double dx = (-x[k + 2] + 8 * x[k + 1] - 8 * x[k - 1] + x[k - 2]) / (12 * h);
    worst = std::max(worst, std::abs(dx - c.rhs(t[k], x[k])) / (1 + std::abs(dx)));
  }
  return worst;
}

CrossRatio superposition_check(const std::vector<double>& x, const std::vector<double>& x1,
                               const std::vector<double>& x2, const std::vector<double>& x3) {
  const std::size_t n = x.size();
  if (x1.size() != n || x2.size() != n || x3.size() != n) throw ShapeMismatch("trajectories differ in length");
  auto close = [](double p, double q) { return std::abs(p - q) <= 1e-12 * (1 + std::abs(p) + std::abs(q)); };
  CrossRatio r;
  double sum = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(x1[i]) || !std::isfinite(x2[i]) || !std::isfinite(x3[i])) {
      r.k.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    if (close(x1[i], x2[i]) || close(x1[i], x3[i]) || close(x2[i], x3[i]))
      throw DegenerateTriple(fmt::format("particular solutions coincide at node {}", i));
    double k = (x[i] - x2[i]) * (x1[i] - x3[i]) / ((x[i] - x1[i]) * (x2[i] - x3[i]));
    r.k.push_back(k);
    if (std::isfinite(k)) {
      sum += k;
      ++m;
    }
  }
  if (m > 0) {
    r.mean = sum / static_cast<double>(m);
    // Two passes; the one-pass formula cancels to ~1e-8 on constant data.
    double sq = 0;
    for (double k : r.k)
      if (std::isfinite(k)) sq += (k - r.mean) * (k - r.mean);
    r.stddev = std::sqrt(sq / static_cast<double>(m));
  }
  return r;
}

Eigen::Vector3d transform_coeffs(const Eigen::Matrix2d& A, const Eigen::Matrix2d& dA, const Eigen::Vector3d& a) {
  const double al = A(0, 0), be = A(0, 1), ga = A(1, 0), de = A(1, 1);
  const double dal = dA(0, 0), dbe = dA(0, 1), dga = dA(1, 0), dde = dA(1, 1);
  Eigen::Matrix3d M;
  M << de * de, -de * ga, ga * ga,  //
      -2 * be * de, al * de + be * ga, -2 * al * ga,  //
      be * be, -al * be, al * al;
  Eigen::Vector3d cocycle(ga * dde - de * dga, de * dal - al * dde + be * dga - ga * dbe, al * dbe - be * dal);
  // (a2, a1, a0) ordering on both sides
  return (M * a + cocycle) / A.determinant();
}

Reduction reduce_by_solutions(const RiccatiCoeffs& c, const std::vector<double>& t,
                              const std::vector<std::vector<double>>& particular, double tol) {
  if (particular.empty() || particular.size() > 3) throw DomainError("need one to three particular solutions");
  for (std::size_t j = 0; j < particular.size(); ++j) {
    if (particular[j].size() != t.size()) throw ShapeMismatch("trajectory and grid differ in length");
    double res = ode_residual(c, t, particular[j]);
    if (res > tol) throw NotASolution(fmt::format("particular solution {} has residual {:.3e}", j + 1, res));
  }
  Reduction r;
  r.t = t;
  const std::size_t m = particular.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::array<Dual, 3> x;
    for (std::size_t j = 0; j < m; ++j) {
      double v = particular[j][i];
      x[j] = {v, c.rhs(t[i], v)};
    }
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q)
        if (std::abs(x[p].v - x[q].v) <= 1e-12 * (1 + std::abs(x[p].v)))
          throw DegenerateTriple(fmt::format("particular solutions coincide at t = {}", t[i]));
    if (x[0].v == 0) throw DomainError(fmt::format("first particular solution vanishes at t = {}", t[i]));
    const Dual one{1, 0}, zero{0, 0};
    DualMat G{one, zero, zero - one / x[0], one};
    if (m >= 2) G = mul(DualMat{one, zero - x[0] * x[1] / (x[0] - x[1]), zero, one}, G);
    if (m >= 3) {
      // diag(1, z) is projectively the unimodular diag(z^{-1/2}, z^{1/2}) and allows z < 0.
      Dual z = x[0] * x[0] * (x[1] - x[2]) / ((x[1] - x[0]) * (x[0] - x[2]));
      G = mul(DualMat{one, zero, zero, z}, G);
    }
    Eigen::Matrix2d A, dA;
    A << G[0].v, G[1].v, G[2].v, G[3].v;
    dA << G[0].d, G[1].d, G[2].d, G[3].d;
    Eigen::Vector3d a = transform_coeffs(A, dA, Eigen::Vector3d(c.a2(t[i]), c.a1(t[i]), c.a0(t[i])));
    r.a2.push_back(a(0));
    r.a1.push_back(a(1));
    r.a0.push_back(a(2));
    r.gauge.push_back(A / std::sqrt(std::abs(A.determinant())));
  }
  return r;
}

FlowResult sl2_flow(const RiccatiCoeffs& c, double t0, double t1, double h, const std::string& method) {
  SampledMatrixFn L(2, [c](double t) { return Eigen::MatrixXd(sl2_generator(c, t)); }, "riccati");
  return solve_flow(L, t0, t1, h, method);
}

double darboux_residual(const RiccatiCoeffs& c, const USolution& u) {
  double worst = 0;
  for (std::size_t i = 0; i < u.t.size(); ++i) {
    const double t = u.t[i], u0 = u.u0[i], u1 = u.u1[i];
    const double du0 = c.rhs(t, u0), du1 = c.a1(t) + 2 * c.a2(t) * u0, du2 = c.a2(t) * std::exp(u1);
    Eigen::Matrix2d P, D;
    P << 1, u0, 0, 1;
    D << std::exp(u1 / 2), 0, 0, std::exp(-u1 / 2);
    Eigen::Matrix2d PD = P * D;
    Eigen::Matrix2d dgg = du0 * e_plus() + du1 * P * h_prime() * P.inverse() + du2 * PD * e_minus() * PD.inverse();
    worst = std::max(worst, (dgg - sl2_generator(c, t)).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace hopfflow
