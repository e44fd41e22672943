#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hopfflow/freetensor.hpp"

namespace hopfflow {

// Binary bracket tree with letter leaves.
class BracketTree {
 public:
  explicit BracketTree(Letter leaf);
  BracketTree(BracketTree left, BracketTree right);
  // [[..[x_{w1},x_{w2}],..],x_{wn}]
  static BracketTree left_normed(const Word& w);

  bool is_leaf() const { return !left_; }
  Letter leaf() const { return leaf_; }
  const BracketTree& left() const { return *left_; }
  const BracketTree& right() const { return *right_; }

  FreePoly expand() const;
  std::size_t degree() const;
  // e.g. "[[X,Y],Y]"
  std::string str(const std::vector<std::string>& names) const;

 private:
  Letter leaf_ = 0;
  std::shared_ptr<const BracketTree> left_, right_;
};

struct BracketTerm {
  BracketTree tree;
  Rational coefficient;
};

FreePoly expand(const std::vector<BracketTerm>& terms);

// Σ over exponent vectors (1/Π i_k!) π_1(X_1^{i_1}…X_n^{i_n}), homogeneous of degree m.
FreePoly phi_m(std::size_t n_letters, std::size_t m);
// log(e^{X_1}…e^{X_n}) in the free algebra, through degree N.
FreePoly cbhd_log(std::size_t N, std::size_t n_letters = 2);
// log(e^X e^Y) − X − Y through degree N; cached per N.
const FreePoly& cbhd_tail(std::size_t N);

// D/n on each homogeneous part, giving left-normed brackets. Brackets are
// then oriented so the first two letters increase, and dependent left-normed
// brackets are eliminated in favour of the earliest independent ones in
// degree-lex order; expansion equality with p is preserved.
std::vector<BracketTerm> to_nested_commutators(const FreePoly& p);
// Raw D/n output without the elimination step.
std::vector<BracketTerm> dynkin_commutators(const FreePoly& p);

Eigen::MatrixXd cbhd_eval(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, std::size_t N);
// Substitutes matrices for the letters of a FreePoly.
Eigen::MatrixXd evaluate_matrix(const FreePoly& p, const std::vector<Eigen::MatrixXd>& letters);

std::vector<std::string> default_letter_names(std::size_t n);

}  // namespace hopfflow
