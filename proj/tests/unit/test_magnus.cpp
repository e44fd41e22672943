#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <unsupported/Eigen/MatrixFunctions>

#include "hopfflow/magnus.hpp"
#include "hopfflow/quadrature.hpp"
#include "hopfflow/spitzer.hpp"
#include "rk_oracle.hpp"

using namespace hopfflow;

namespace {

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXd m(2, 2);
  m << a, b, c, d;
  return m;
}

FreePoly letter_word(std::initializer_list<Letter> w, Rational c = 1) {
  FreePoly p;
  p.add_term(Word(w), c);
  return p;
}

}  // namespace

TEST(Magnus, OmegaTermsDisplays) {
  auto om = omega_terms(4);
  EXPECT_EQ(om[1].str(), "1/1 R(a)");
  EXPECT_EQ(om[2].str(), "-1/2 R([R(a),a])");
  EXPECT_EQ(om[3].str(), "1/4 R([R([R(a),a]),a]) + 1/12 R([R(a),[R(a),a]])");
  EXPECT_EQ(om[4].terms().size(), 4u);
  EXPECT_THROW(omega_terms(6), DegreeOutOfRange);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& [k, t] : om[n].terms()) EXPECT_EQ(t.first.degree(), n);
}

TEST(Magnus, OmegaTermsAgreeWithFixedPointAndChenLog) {
  Rng rng(41);
  IntegrationSeries P(2, 7);
  SeriesLift<IntegrationSeries> outer(P, 5);
  auto a = P.random(rng);
  auto chi = chi_zero(outer, outer.monomial(a, 1));
  auto om = omega_terms(5);
  // Rota–Baxter words (Ra)^{[n]} as letters of the Chen–Magnus table.
  std::vector<Series<QMatrix>> W{P.one()};
  for (int n = 1; n <= 5; ++n) W.push_back(P.apply(a * W.back()));
  auto table = chen_to_magnus(5);
  std::vector<Series<QMatrix>> letters(W.begin() + 1, W.end());
  for (std::size_t n = 1; n <= 5; ++n) {
    auto sym = evaluate(om[n], P, a);
    EXPECT_EQ(sym, P.apply(chi[n])) << n;
    auto via_words = evaluate(table[n], letters, P.one(), P.zero(),
                              [](const Rational& c, const Series<QMatrix>& v) { return c * v; });
    EXPECT_EQ(sym, via_words) << n;
  }
}

TEST(Magnus, ChenMagnusRoundTrip) {
  const std::size_t N = 6;
  auto c2m = chen_to_magnus(N), m2c = magnus_to_chen(N);
  std::vector<FreePoly> omegas(c2m.begin() + 1, c2m.end()), words(m2c.begin() + 1, m2c.end());
  for (std::size_t n = 1; n <= N; ++n) {
    Letter l = static_cast<Letter>(n - 1);
    EXPECT_EQ(substitute_letters(m2c[n], omegas), FreePoly::letter(l)) << n;
    EXPECT_EQ(substitute_letters(c2m[n], words), FreePoly::letter(l)) << n;
  }
  EXPECT_EQ(c2m[1], FreePoly::letter(0));
  EXPECT_EQ(m2c[1], FreePoly::letter(0));
  // 2!(Ra)^{[2]} = Ω₁² + 2Ω₂
  EXPECT_EQ(2 * m2c[2], letter_word({0, 0}) + letter_word({1}, 2));
  // 3!(Ra)^{[3]} = Ω₁³ + 3(Ω₁Ω₂ + Ω₂Ω₁) + 6Ω₃
  EXPECT_EQ(6 * m2c[3], letter_word({0, 0, 0}) + letter_word({0, 1}, 3) + letter_word({1, 0}, 3) + letter_word({2}, 6));
}

TEST(Magnus, ChenDisplaysOnCarrier) {
  Rng rng(42);
  IntegrationSeries P(3, 6);
  auto a = P.random(rng);
  auto om = omega_terms(3);
  auto O1 = evaluate(om[1], P, a), O2 = evaluate(om[2], P, a), O3 = evaluate(om[3], P, a);
  auto W2 = P.apply(a * P.apply(a)), W3 = P.apply(a * W2);
  EXPECT_EQ(2 * W2, O1 * O1 + 2 * O2);
  EXPECT_EQ(6 * W3, O1 * O1 * O1 + 3 * (O1 * O2 + O2 * O1) + 6 * O3);
}

TEST(Magnus, RiemannEvaluationMatchesIteratedIntegrals) {
  auto A = SampledMatrixFn::airy();
  RiemannInstance R(1.0, 2000, 2);
  auto a = R.sample([&](double t) { return A(t); });
  auto om = omega_terms(3);
  for (std::size_t n = 1; n <= 3; ++n) {
    Eigen::MatrixXd sym = evaluate(om[n], R, a).values.back();
    EXPECT_LE((sym - strichartz_term(A, n, 1.0)).norm(), 1e-6) << n;
  }
}

TEST(Magnus, StrichartzLowOrderForms) {
  auto A = SampledMatrixFn::polynomial({mat2(0.3, 1, -0.2, 0), mat2(0, 0.5, -1, 0.1), mat2(0.2, 0, 0.4, -0.3)});
  const double T = 0.8;
  const auto g = gauss_legendre(20);
  auto br = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) -> Eigen::MatrixXd { return x * y - y * x; };
  // ½∬_{t₂<t₁}[a(t₁),a(t₂)]
  Eigen::MatrixXd two = Eigen::MatrixXd::Zero(2, 2), three = Eigen::MatrixXd::Zero(2, 2);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    double t1 = T * g.nodes[i], w1 = T * g.weights[i];
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      double t2 = t1 * g.nodes[j], w2 = t1 * g.weights[j];
      two += 0.5 * w1 * w2 * br(A(t1), A(t2));
      for (std::size_t k = 0; k < g.nodes.size(); ++k) {
        double t3 = t2 * g.nodes[k], w3 = t2 * g.weights[k];
        three += (w1 * w2 * w3 / 6) * (br(br(A(t1), A(t2)), A(t3)) - br(br(A(t2), A(t3)), A(t1)));
      }
    }
  }
  EXPECT_LE((strichartz_term(A, 2, T) - two).norm(), 1e-10);
  EXPECT_LE((strichartz_term(A, 3, T) - three).norm(), 1e-10);
}

TEST(Magnus, CommutingFamiliesVanish) {
  auto C = SampledMatrixFn::preset("commuting");
  for (std::size_t n = 2; n <= 3; ++n) EXPECT_LE(strichartz_term(C, n, 1.0).norm(), 1e-14);
  EXPECT_LE(heaviside_omega3(C, 1.0).norm(), 1e-14);
  EXPECT_LE(heaviside_omega3(SampledMatrixFn::constant(mat2(1, 2, 3, 4)), 1.0).norm(), 1e-12);
}

TEST(Magnus, HeavisideAgreesWithStrichartz) {
  for (const auto& A : {SampledMatrixFn::airy(), SampledMatrixFn::preset("shear")}) {
    EXPECT_LE((heaviside_omega3(A, 1.0) - strichartz_term(A, 3, 1.0)).norm(), 1e-6) << A.name();
  }
}

TEST(Magnus, QuadratureBudget) {
  EXPECT_THROW(strichartz_term(SampledMatrixFn::airy(), 5, 1.0, 24, 1e6), QuadratureBudgetExceeded);
}

TEST(Magnus, ConstantAndCommutingFlows) {
  Eigen::MatrixXd M = mat2(0.1, 1, -2, 0.3);
  auto r = magnus_solve(SampledMatrixFn::constant(M), 0, 1.5, 0.37, 4);
  EXPECT_LE((r.F.back() - (1.5 * M).exp()).norm(), 1e-12);
  EXPECT_EQ(r.F.front(), Eigen::MatrixXd::Identity(2, 2));
  EXPECT_DOUBLE_EQ(r.t.back(), 1.5);
  auto C = SampledMatrixFn::preset("commuting");
  Eigen::MatrixXd base = mat2(1, 2, 0, -1);
  auto rc = magnus_solve(C, 0, 1, 1.0 / 32, 4);
  EXPECT_LE((rc.F.back() - (std::sin(1.0) * base).exp()).norm(), 1e-8);
  auto r2 = magnus_solve(C, 0, 1, 1.0 / 64, 2);
  EXPECT_LE((r2.F.back() - (std::sin(1.0) * base).exp()).norm(), 1e-4);
}

TEST(Magnus, AiryConvergenceSlope) {
  auto A = SampledMatrixFn::airy();
  Eigen::MatrixXd ref = oracle::rkf45_flow([&](double t) { return A(t); }, 0, 1, 1e-12);
  std::vector<double> lh, le;
  for (int inv : {8, 16, 32, 64, 128}) {
    auto r = magnus_solve(A, 0, 1, 1.0 / inv, 4);
    lh.push_back(std::log(1.0 / inv));
    le.push_back(std::log((r.F.back() - ref).norm()));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lh.size(); ++i) mx += lh[i] / lh.size(), my += le[i] / le.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lh.size(); ++i) sxy += (lh[i] - mx) * (le[i] - my), sxx += (lh[i] - mx) * (lh[i] - mx);
  EXPECT_NEAR(sxy / sxx, 4.0, 0.3);
}

TEST(Magnus, DeterminantPreservation) {
  auto A = SampledMatrixFn::airy();
  auto m = magnus_solve(A, 0, 1, 0.25, 4);
  for (double d : m.det) EXPECT_NEAR(d, 1.0, 1e-10);
  auto d2 = dyson_solve(A, 0, 1, 0.25, 2);
  double worst = 0;
  for (double d : d2.det) worst = std::max(worst, std::abs(d - 1));
  EXPECT_GT(worst, 1e-6);
}

TEST(Dyson, DepthOneIsEulerOnConstants) {
  Eigen::MatrixXd M = mat2(0, 1, -1, 0.5);
  auto r = dyson_solve(SampledMatrixFn::constant(M), 0, 0.5, 0.125, 1);
  Eigen::MatrixXd step = Eigen::MatrixXd::Identity(2, 2) + 0.125 * M;
  Eigen::MatrixXd expect = step * step * step * step;
  EXPECT_LE((r.F.back() - expect).norm(), 1e-13);
}

TEST(Dyson, DepthConvergesOnCommutingFamily) {
  auto C = SampledMatrixFn::preset("commuting");
  Eigen::MatrixXd target = (std::sin(1.0) * mat2(1, 2, 0, -1)).exp();
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t depth = 2; depth <= 6; ++depth) {
    double err = (dyson_solve(C, 0, 1, 0.25, depth).F.back() - target).norm();
    EXPECT_LT(err, prev) << depth;
    prev = err;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(Dyson, FlowFactorization) {
  auto A = SampledMatrixFn::airy();
  auto whole = dyson_solve(A, 0, 1, 0.125, 8);
  auto first = dyson_solve(A, 0, 0.5, 0.125, 8), second = dyson_solve(A, 0.5, 1, 0.125, 8);
  EXPECT_LE((whole.F.back() - second.F.back() * first.F.back()).norm(), 1e-12);
  Eigen::MatrixXd ref = oracle::rkf45_flow([&](double t) { return A(t); }, 0, 1, 1e-12);
  EXPECT_LE((whole.F.back() - ref).norm(), 1e-9);
}

TEST(Magnus, StepRejected) {
  SampledMatrixFn bad(1, [](double t) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    return m;
  });
  EXPECT_THROW(magnus_solve(bad, 0, 1, 0.25, 4), StepRejected);
  EXPECT_THROW(magnus_solve(bad, 0, 1, 0.25, 3), DomainError);
}

TEST(Affine, ScalarClosedForm) {
  auto A = SampledMatrixFn::constant(Eigen::MatrixXd::Ones(1, 1));
  auto tr = affine_solve(A, [](double) { return Eigen::VectorXd::Ones(1); }, Eigen::VectorXd::Zero(1), 0, 1, 0.1);
  EXPECT_NEAR(tr.x.back()(0), std::exp(1.0) - 1, 1e-8);
}

TEST(Affine, ReducesToFlowAndToQuadrature) {
  auto A = SampledMatrixFn::airy();
  Eigen::VectorXd x0(2);
  x0 << 1, -0.5;
  auto zero_b = [](double) { return Eigen::VectorXd::Zero(2); };
  auto tr = affine_solve(A, zero_b, x0, 0, 1, 0.125);
  auto flow = magnus_solve(A, 0, 1, 0.125, 4);
  EXPECT_LE((tr.x.back() - flow.F.back() * x0).norm(), 1e-13);
  auto Z = SampledMatrixFn::constant(Eigen::MatrixXd::Zero(2, 2));
  auto b = [](double t) {
    Eigen::VectorXd v(2);
    v << std::cos(t), t * t;
    return v;
  };
  auto q = affine_solve(Z, b, x0, 0, 1, 0.25);
  EXPECT_NEAR(q.x.back()(0), 1 + std::sin(1.0), 1e-12);
  EXPECT_NEAR(q.x.back()(1), -0.5 + 1.0 / 3, 1e-12);
  EXPECT_THROW(affine_solve(Z, b, Eigen::VectorXd::Zero(3), 0, 1, 0.25), ShapeMismatch);
}
