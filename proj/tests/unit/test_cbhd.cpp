#include <gtest/gtest.h>

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "hopfflow/cbhd.hpp"
#include "hopfflow/idempotents.hpp"

using namespace hopfflow;

namespace {

const FreePoly X = FreePoly::letter(0), Y = FreePoly::letter(1);

FreePoly br(const FreePoly& a, const FreePoly& b) { return commutator(a, b); }

const std::vector<std::string> names{"X", "Y"};

}  // namespace

TEST(Cbhd, LowDegreeTerms) {
  EXPECT_EQ(phi_m(2, 1), X + Y);
  EXPECT_EQ(phi_m(2, 2), Rational(1, 2) * br(X, Y));
  EXPECT_EQ(phi_m(2, 3), Rational(1, 12) * (br(br(X, Y), Y) - br(br(X, Y), X)));
  EXPECT_EQ(phi_m(2, 4), Rational(-1, 24) * br(br(br(X, Y), X), Y));
  // The Jacobi form used to state the quartic term.
  EXPECT_EQ(br(br(br(X, Y), X), Y), br(br(br(X, Y), Y), X));
}

TEST(Cbhd, TwoPipelinesAgree) {
  for (std::size_t N = 1; N <= 6; ++N) {
    FreePoly sum;
    for (std::size_t m = 1; m <= N; ++m) sum += phi_m(2, m);
    EXPECT_EQ(cbhd_log(N), sum) << "N=" << N;
  }
  FreePoly sum3;
  for (std::size_t m = 1; m <= 4; ++m) sum3 += phi_m(3, m);
  EXPECT_EQ(cbhd_log(4, 3), sum3);
}

TEST(Cbhd, PhiIsLieAndDynkinEigen) {
  for (std::size_t m = 1; m <= 6; ++m) {
    FreePoly p = phi_m(2, m);
    EXPECT_TRUE(is_lie_element(p)) << m;
    EXPECT_EQ(dynkin(p), Rational(static_cast<long>(m)) * p) << m;
    EXPECT_EQ(p.degree(), static_cast<long>(m));
  }
}

TEST(Cbhd, MultilinearPartIsPi1) {
  for (std::size_t n = 1; n <= 5; ++n) {
    FreePoly p = phi_m(n, n);
    FreePoly multilinear;
    for (const auto& [w, c] : p.terms()) {
      std::vector<Letter> s = w.letters();
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) == s.end()) multilinear.add_term(w, c);
    }
    std::vector<Letter> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = static_cast<Letter>(i);
    EXPECT_EQ(multilinear, pi1_word(Word(l))) << n;
  }
}

TEST(Cbhd, NestedCommutators) {
  auto simple = to_nested_commutators(br(X, Y));
  ASSERT_EQ(simple.size(), 1u);
  EXPECT_EQ(simple[0].tree.str(names), "[X,Y]");
  EXPECT_EQ(simple[0].coefficient, 1);

  auto two = to_nested_commutators(phi_m(2, 2));
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].tree.str(names), "[X,Y]");
  EXPECT_EQ(two[0].coefficient, Rational(1, 2));

  auto four = to_nested_commutators(phi_m(2, 4));
  ASSERT_EQ(four.size(), 1u);
  EXPECT_EQ(four[0].tree.str(names), "[[[X,Y],X],Y]");
  EXPECT_EQ(four[0].coefficient, Rational(-1, 24));

  for (std::size_t m = 1; m <= 6; ++m) {
    FreePoly p = phi_m(2, m);
    EXPECT_EQ(expand(to_nested_commutators(p)), p);
    EXPECT_EQ(expand(dynkin_commutators(p)), p);
  }
  EXPECT_EQ(expand(to_nested_commutators(cbhd_log(5, 3))), cbhd_log(5, 3));
  EXPECT_THROW(to_nested_commutators(X * Y), NotLie);
}

TEST(Cbhd, MatrixEvaluation) {
  Eigen::MatrixXd A = Eigen::Vector3d(0.3, -0.2, 0.5).asDiagonal();
  Eigen::MatrixXd B = Eigen::Vector3d(0.1, 0.7, -0.4).asDiagonal();
  EXPECT_LT((cbhd_eval(A, B, 6) - (A + B)).norm(), 1e-14);

  Eigen::MatrixXd C(3, 3);
  C << 0.1, 0.2, -0.1, 0.0, 0.3, 0.2, -0.2, 0.1, 0.05;
  EXPECT_LT(cbhd_eval(C, -C, 6).norm(), 1e-14);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dist(-5, 5);
  Eigen::MatrixXd P(3, 3), Q(3, 3);
  for (int i = 0; i < 9; ++i) {
    P(i / 3, i % 3) = dist(rng) / 40.0;
    Q(i / 3, i % 3) = dist(rng) / 40.0;
  }
  Eigen::MatrixXd target = P.exp() * Q.exp();
  double prev = 1e300;
  for (std::size_t N = 2; N <= 6; ++N) {
    double err = (cbhd_eval(P, Q, N).exp() - target).norm();
    EXPECT_LT(err, prev) << N;
    prev = err;
  }
  EXPECT_LT(prev, 1e-6);
  EXPECT_THROW(cbhd_eval(Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(3, 3), 3), ShapeMismatch);
}
