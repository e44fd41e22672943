#include "hopfflow/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace hopfflow {

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 1; k < n; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule r;
  for (std::size_t i = 0; i < n; ++i) {
    double v = es.eigenvectors()(0, i);
    r.nodes.push_back(0.5 * (es.eigenvalues()(i) + 1.0));
    r.weights.push_back(v * v);  // 2v²·½
  }
  return r;
}

Eigen::MatrixXd integration_matrix(const std::vector<double>& nodes) {
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd V(n, n), P(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double x = nodes[i], pk = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      V(i, k) = pk;
      pk *= x;
      P(i, k) = pk / static_cast<double>(k + 1);
    }
  }
  // S = P V^{-1}
  return V.transpose().partialPivLu().solve(P.transpose()).transpose();
}

}  // namespace hopfflow
