#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace hopfflow {

struct QuadratureRule {
  std::vector<double> nodes, weights;
};

// n-point Gauss–Legendre rule on [0,1] (Golub–Welsch).
QuadratureRule gauss_legendre(std::size_t n);

// S(i,j) such that ∫_0^{x_i} f ≈ Σ_j S(i,j) f(x_j) for the nodes x of a rule
// on [0,1]; exact for polynomials of degree < n.
Eigen::MatrixXd integration_matrix(const std::vector<double>& nodes);

}  // namespace hopfflow
