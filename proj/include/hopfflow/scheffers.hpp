#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hopfflow/magnus.hpp"

namespace hopfflow {

// ẋ = a0(t) + a1(t)x + a2(t)x²
struct RiccatiCoeffs {
  std::function<double(double)> a0, a1, a2;

  double rhs(double t, double x) const { return a0(t) + a1(t) * x + a2(t) * x * x; }
  static RiccatiCoeffs constant(double c0, double c1, double c2);
};

// sl(2) basis realizing ∂x, x∂x, x²∂x under Φ.
Eigen::Matrix2d e_plus();
Eigen::Matrix2d h_prime();
Eigen::Matrix2d e_minus();
// a0 E'+ + a1 H' + a2 E'-
Eigen::Matrix2d sl2_generator(const RiccatiCoeffs& c, double t);

// (αx+β)/(γx+δ) on ℝ ∪ {∞}; ∞ is represented by ±infinity.
double mobius(const Eigen::Matrix2d& g, double x);

// Second-kind coordinates g = exp(u0 E'+) exp(u1 H') exp(u2 E'-) on a uniform grid.
struct USolution {
  std::vector<double> t, u0, u1, u2;
};

// Adaptive Dormand–Prince on the u-system from u = 0 at t0. Throws BlowUp
// when u0 escapes.
USolution solve_u_system(const RiccatiCoeffs& c, double t0, double t1, double h, double tol = 1e-12);
// Same, with u0 taken from a known solution through 0 at t0.
USolution solve_u_system(const RiccatiCoeffs& c, const std::function<double(double)>& particular, double t0,
                         double t1, double h, double tol = 1e-12);

// x(t) = e^{u1}x0/(1 − u2x0) + u0 per node; x0 = ±infinity gives u0 − e^{u1}/u2.
// Throws PoleCrossing when the denominator changes sign.
std::vector<double> riccati_general(const USolution& u, double x0);

// Finite-difference residual max |ẋ − rhs| over interior nodes (5-point stencil).
double ode_residual(const RiccatiCoeffs& c, const std::vector<double>& t, const std::vector<double>& x);

struct CrossRatio {
  // NaN where some trajectory is not finite.
  std::vector<double> k;
  double mean = 0, stddev = 0;
};

// k = (x−x2)(x1−x3)/((x−x1)(x2−x3)) per node. Throws DegenerateTriple.
CrossRatio superposition_check(const std::vector<double>& x, const std::vector<double>& x1,
                               const std::vector<double>& x2, const std::vector<double>& x3);

struct Reduction {
  std::vector<double> t, a0, a1, a2;
  // Accumulated gauge A_k⋯A_1, scaled to |det| = 1.
  std::vector<Eigen::Matrix2d> gauge;
};

// Transformed coefficients of x' = Φ(A(t), x) for a curve A in GL(2):
// (M·(a2,a1,a0) + cocycle)/det A.
Eigen::Vector3d transform_coeffs(const Eigen::Matrix2d& A, const Eigen::Matrix2d& dA, const Eigen::Vector3d& a);

// Gauges by one to three particular solutions sampled on `t` (uniform).
// Throws NotASolution when a supplied trajectory misses the ODE by more than tol.
Reduction reduce_by_solutions(const RiccatiCoeffs& c, const std::vector<double>& t,
                              const std::vector<std::vector<double>>& particular, double tol = 1e-6);

// dg/dt = L(t)g with L = sl2_generator, g(t0) = 1.
FlowResult sl2_flow(const RiccatiCoeffs& c, double t0, double t1, double h, const std::string& method = "magnus4");

// max over nodes of ‖ġg⁻¹ − L(t)‖ with g from the coordinates and u̇ from the u-system.
double darboux_residual(const RiccatiCoeffs& c, const USolution& u);

}  // namespace hopfflow
