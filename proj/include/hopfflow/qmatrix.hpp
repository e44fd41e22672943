#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hopfflow/rational.hpp"

namespace hopfflow {

// Dense rational matrix, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  QMatrix transpose() const;

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  QMatrix& operator*=(const Rational& c);

  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator-(QMatrix a) { return a *= Rational(-1); }
  friend QMatrix operator*(const Rational& c, QMatrix a) { return a *= c; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b);

  std::vector<double> to_doubles() const;
  std::string str() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

QMatrix commutator(const QMatrix& a, const QMatrix& b);

// Basis of the right null space, one column per vector, from the reduced
// row echelon form (free variables set to one).
std::vector<std::vector<Rational>> null_space(const QMatrix& m);
std::size_t rank(const QMatrix& m);
// Solves m x = b exactly; returns false when inconsistent.
bool solve(const QMatrix& m, const std::vector<Rational>& b, std::vector<Rational>& x);

}  // namespace hopfflow
