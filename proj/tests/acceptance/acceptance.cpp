// One line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "chain_rule_oracle.hpp"
#include "hopfflow/cbhd.hpp"
#include "hopfflow/faadibruno.hpp"
#include "hopfflow/idempotents.hpp"
#include "hopfflow/magnus.hpp"
#include "hopfflow/scheffers.hpp"
#include "hopfflow/spitzer.hpp"
#include "rk_oracle.hpp"

using namespace hopfflow;

namespace {

// Collects failed sub-checks; the criterion passes when none failed.
class Tally {
 public:
  void require(bool ok, const std::string& what) {
    ++count_;
    if (!ok && failed_.size() < 3) failed_.push_back(what);
    if (!ok) ++bad_;
  }
  void within(double value, double tol, const std::string& what) {
    require(std::isfinite(value) && value <= tol, fmt::format("{} = {:.3g} > {:.0e}", what, value, tol));
  }
  bool pass() const { return bad_ == 0; }
  std::string detail(const std::string& extra = "") const {
    std::string s = fmt::format("{}/{} checks", count_ - bad_, count_);
    if (!extra.empty()) s += ", " + extra;
    for (const auto& f : failed_) s += "; failed: " + f;
    return s;
  }

 private:
  std::size_t count_ = 0, bad_ = 0;
  std::vector<std::string> failed_;
};

struct Outcome {
  bool pass;
  std::string detail;
};

template <class I>
std::vector<typename I::value_type> random_tuple(const I& inst, std::size_t n, Rng& rng) {
  std::vector<typename I::value_type> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(inst.random(rng));
  return xs;
}

Word identity_word(unsigned n) {
  std::vector<Letter> l(n);
  for (unsigned i = 0; i < n; ++i) l[i] = i;
  return Word(l);
}

Word perm_word(const std::string& s) {
  std::vector<Letter> l;
  for (char c : s) l.push_back(static_cast<Letter>(c - '1'));
  return Word(l);
}

FreePoly br(const FreePoly& a, const FreePoly& b) { return commutator(a, b); }

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

// ---- 1 ----

Outcome cbhd_terms() {
  Tally t;
  const FreePoly X = FreePoly::letter(0), Y = FreePoly::letter(1);
  const std::vector<FreePoly> expected{
      X + Y,
      Rational(1, 2) * br(X, Y),
      Rational(1, 12) * (br(br(X, Y), Y) - br(br(X, Y), X)),
      Rational(-1, 24) * br(br(br(X, Y), X), Y),
  };
  FreePoly sum;
  for (std::size_t m = 1; m <= 4; ++m) {
    t.require(phi_m(2, m) == expected[m - 1], fmt::format("Phi_{}", m));
    sum += expected[m - 1];
  }
  t.require(cbhd_log(4) == sum, "log(e^X e^Y) through degree 4");
  auto four = to_nested_commutators(phi_m(2, 4));
  t.require(four.size() == 1 && four[0].tree.str({"X", "Y"}) == "[[[X,Y],X],Y]" && four[0].coefficient == Rational(-1, 24),
            "Phi_4 as a single nested commutator");
  return {t.pass(), t.detail()};
}

// ---- 2 ----

Outcome eulerian_idempotents() {
  Tally t;
  FreePoly three;
  for (const auto& [s, c] : std::map<std::string, Rational>{{"123", Rational(1, 3)},
                                                           {"132", Rational(-1, 6)},
                                                           {"213", Rational(-1, 6)},
                                                           {"231", Rational(-1, 6)},
                                                           {"312", Rational(-1, 6)},
                                                           {"321", Rational(1, 3)}})
    three.add_term(perm_word(s), c);
  t.require(pi1_word(identity_word(3)) == three, "pi1 degree 3 table");
  t.require(eulerian(1, 3, 3).apply(identity_word(3)) == three, "pi1 degree 3 via matrices");

  FreePoly four;
  four.add_term(perm_word("1234"), Rational(1, 4));
  four.add_term(perm_word("4321"), Rational(-1, 4));
  for (const char* s : {"1243", "1324", "1342", "1423", "2134", "2314", "2341", "2413", "3124", "3412", "4123"})
    four.add_term(perm_word(s), Rational(-1, 12));
  for (const char* s : {"1432", "2143", "2431", "3142", "3214", "3241", "3421", "4132", "4213", "4231", "4312"})
    four.add_term(perm_word(s), Rational(1, 12));
  t.require(four.size() == 24, "degree 4 table covers S_4");
  t.require(pi1_word(identity_word(4)) == four, "pi1 degree 4 table");
  t.require(eulerian(1, 4, 4).apply(identity_word(4)) == four, "pi1 degree 4 via matrices");

  const std::size_t N = 6;
  for (auto side : {HopfSide::ConcatUnshuffle, HopfSide::ShuffleDeconcat}) {
    const char* label = side == HopfSide::ConcatUnshuffle ? "concat" : "shuffle";
    std::vector<GradedEndo> pi;
    for (std::size_t n = 0; n <= N; ++n) pi.push_back(eulerian(n, N, 2, side));
    GradedEndo sum(2, N, side), zero(2, N, side);
    for (const auto& p : pi) sum += p;
    t.require(sum == GradedEndo::identity(2, N, side), fmt::format("{} completeness", label));
    for (std::size_t m = 0; m <= N; ++m)
      for (std::size_t k = 0; k <= N; ++k)
        t.require(pi[m] * pi[k] == (m == k ? pi[k] : zero), fmt::format("{} pi{} pi{}", label, m, k));
  }
  for (unsigned n = 1; n <= 6; ++n)
    t.require(descent_pi1_word(n) == pi1_word(identity_word(n)), fmt::format("descent formula n={}", n));
  return {t.pass(), t.detail()};
}

// ---- 3 ----

template <class I>
void rb_pairs(Tally& t, const I& inst, const std::string& label, Rng& rng, int pairs) {
  int zero = 0;
  for (int i = 0; i < pairs; ++i) {
    auto a = inst.random(rng), b = inst.random(rng);
    if (is_zero(rb_residual(inst, a, b))) ++zero;
  }
  t.require(zero == pairs, fmt::format("{}: {}/{} pairs exact", label, zero, pairs));
}

Outcome rota_baxter() {
  Tally t;
  Rng rng(301);
  const int pairs = 100;
  for (Rational theta : {Rational(1), Rational(2), ratio(-1, 3)})
    rb_pairs(t, ProjectionInstance(2, theta), fmt::format("projection theta={}", theta.get_str()), rng, pairs);
  rb_pairs(t, SummationInstance(1), "summation step 1", rng, pairs);
  rb_pairs(t, SummationInstance(ratio(1, 2)), "summation step 1/2", rng, pairs);
  rb_pairs(t, JacksonInstance(ratio(1, 3), JacksonInstance::Mode::Pq), "jackson pq", rng, pairs);
  rb_pairs(t, JacksonInstance(ratio(1, 3), JacksonInstance::Mode::PqHat), "jackson pqhat", rng, pairs);
  rb_pairs(t, JacksonInstance(ratio(1, 3), JacksonInstance::Mode::JBar), "jackson jbar", rng, pairs);
  RiemannInstance riemann(1.0, 2000, 1);
  double worst = 0;
  for (int i = 0; i < pairs; ++i) {
    auto a = riemann.random(rng), b = riemann.random(rng);
    worst = std::max(worst, rb_residual(riemann, a, b).max_abs());
  }
  t.within(worst, 1e-12, "riemann residual");
  return {t.pass(), t.detail(fmt::format("riemann max {:.2e}", worst))};
}

// ---- 4 ----

Outcome spitzer_identities() {
  Tally t;
  Rng rng(401);
  for (Rational theta : {Rational(1), Rational(2)}) {
    ProjectionInstance base(1, theta);
    SeriesLift<ProjectionInstance> lift(base, 6);
    for (int i = 0; i < 5; ++i)
      t.require(classical_spitzer_check(lift, base.random(rng)).exact,
                fmt::format("classical projection theta={}", theta.get_str()));
  }
  SummationInstance sum(ratio(1, 2));
  t.require(classical_spitzer_check(SeriesLift<SummationInstance>(sum, 6), sum.random(rng)).exact,
            "classical summation");
  IntegrationSeries integ(1, 6);
  t.require(classical_spitzer_check(integ, random_qmatrix(1, rng)).exact, "classical integration");

  for (Rational theta : {Rational(1), Rational(2)}) {
    ProjectionInstance base(2, theta);
    SeriesLift<ProjectionInstance> lift(base, 5);
    for (int i = 0; i < 3; ++i) {
      auto r = nc_spitzer_check(lift, base.random(rng));
      t.require(r.residual.exact, fmt::format("nc projection theta={}", theta.get_str()));
      t.require(r.factorization.exact, fmt::format("nc factorization theta={}", theta.get_str()));
    }
  }

  ProjectionInstance pc(1, 2);
  SeriesLift<ProjectionInstance> pl(pc, 5);
  auto u = log_u(pl, pl.monomial(pc.random(rng), 1));
  t.require(chi_theta(pl, u) == u, "chi on commutative projection");
  JacksonInstance jack(ratio(1, 2));
  SeriesLift<JacksonInstance> jl(jack, 4);
  auto v = log_u(jl, jl.monomial(jack.random(rng), 1));
  t.require(chi_theta(jl, v) == v, "chi on jackson");
  return {t.pass(), t.detail()};
}

// ---- 5 ----

Outcome bohnenblust_spitzer() {
  Tally t;
  Rng rng(501);
  auto commutative = [&](const auto& inst, int trials) {
    for (std::size_t n = 1; n <= 5; ++n)
      for (int i = 0; i < trials; ++i) {
        auto s = bohnenblust_commutative(inst, random_tuple(inst, n, rng));
        t.require(s.lhs == s.rhs, fmt::format("commutative {} n={}", inst.name(), n));
      }
  };
  commutative(ProjectionInstance(1, 2), 5);
  commutative(SummationInstance(1), 3);
  commutative(JacksonInstance(ratio(1, 2), JacksonInstance::Mode::Pq), 3);
  commutative(IntegrationSeries(1, 8), 3);

  const int tuples = 50;
  for (Rational theta : {Rational(0), Rational(1), Rational(2)}) {
    TriangularInstance tri(3, theta);
    ProjectionInstance proj(2, theta);
    for (std::size_t n = 1; n <= 4; ++n)
      for (int i = 0; i < tuples; ++i) {
        auto s = nc_bohnenblust(tri, random_tuple(tri, n, rng));
        t.require(s.lhs == s.rhs, fmt::format("nc triangular theta={} n={}", theta.get_str(), n));
        auto p = nc_bohnenblust(proj, random_tuple(proj, n, rng));
        t.require(p.lhs == p.rhs, fmt::format("nc projection theta={} n={}", theta.get_str(), n));
      }
  }

  TriangularInstance inst(3, 2);
  auto x = random_tuple(inst, 3, rng);
  auto R = [&](const QMatrix& m) { return inst.apply(m); };
  auto dot = [&](const QMatrix& a, const QMatrix& b) { return pre_lie(inst, a, b); };
  auto star = [&](const QMatrix& a, const QMatrix& b) { return double_product(inst, a, b); };
  const std::vector<std::pair<std::vector<std::size_t>, QMatrix>> expected{
      {{0, 1, 2}, star(star(x[0], x[1]), x[2])}, {{1, 0, 2}, star(dot(x[1], x[0]), x[2])},
      {{2, 0, 1}, star(dot(x[2], x[0]), x[1])},  {{2, 1, 0}, dot(x[2], dot(x[1], x[0]))},
      {{0, 2, 1}, star(x[0], dot(x[2], x[1]))},  {{1, 2, 0}, dot(x[1], dot(x[2], x[0]))},
  };
  QMatrix total(3, 3);
  for (const auto& [sigma, term] : expected) {
    t.require(diamond_word(inst, x, sigma) == term,
              fmt::format("n=3 term for ({}{}{})", sigma[0] + 1, sigma[1] + 1, sigma[2] + 1));
    total += R(term);
  }
  auto s = nc_bohnenblust(inst, x);
  t.require(s.rhs == total && s.lhs == total, "n=3 sum of terms");
  QMatrix product_form = R(x[0]) * R(x[1]) * R(x[2]) + R(dot(x[1], x[0])) * R(x[2]) + R(dot(x[2], x[0])) * R(x[1]) +
                         R(dot(x[2], dot(x[1], x[0]))) + R(x[0]) * R(dot(x[2], x[1])) + R(dot(x[1], dot(x[2], x[0])));
  t.require(total == product_form, "n=3 product form");
  return {t.pass(), t.detail()};
}

// ---- 6 ----

FreePoly word_poly(std::initializer_list<Letter> w, Rational c = 1) {
  FreePoly p;
  p.add_term(Word(w), c);
  return p;
}

Outcome lam_and_chen() {
  Tally t;
  Rng rng(601);
  for (Rational theta : {Rational(0), Rational(1), Rational(-2)}) {
    TriangularInstance inst(3, theta);
    auto lam = lam_expansion(inst, inst.random(rng), 5);
    const std::string th = theta.get_str();
    for (unsigned n = 1; n <= 5; ++n)
      t.require(lam.rblevel_residual[n].is_zero(), fmt::format("RBlevel theta={} n={}", th, n));
    const auto& C = lam.C;
    const auto& W = lam.words;
    t.require(2 * W[2] == C[1] * C[1] + C[2], fmt::format("2 W_2 theta={}", th));
    t.require(6 * W[3] == C[1] * C[1] * C[1] + 2 * C[2] * C[1] + C[1] * C[2] + 2 * C[3], fmt::format("6 W_3 theta={}", th));
    t.require(lam.K[3] == ratio(1, 3) * C[3] + ratio(1, 12) * (C[2] * C[1] - C[1] * C[2]), fmt::format("K_3 theta={}", th));
  }

  const std::size_t N = 6;
  auto c2m = chen_to_magnus(N), m2c = magnus_to_chen(N);
  std::vector<FreePoly> omegas(c2m.begin() + 1, c2m.end()), words(m2c.begin() + 1, m2c.end());
  for (std::size_t n = 1; n <= N; ++n) {
    const auto l = FreePoly::letter(static_cast<Letter>(n - 1));
    t.require(substitute_letters(m2c[n], omegas) == l, fmt::format("chen(magnus) order {}", n));
    t.require(substitute_letters(c2m[n], words) == l, fmt::format("magnus(chen) order {}", n));
  }
  t.require(2 * m2c[2] == word_poly({0, 0}) + word_poly({1}, 2), "2! display");
  t.require(6 * m2c[3] == word_poly({0, 0, 0}) + word_poly({0, 1}, 3) + word_poly({1, 0}, 3) + word_poly({2}, 6),
            "3! display");

  IntegrationSeries P(3, 6);
  auto a = P.random(rng);
  auto om = omega_terms(3);
  auto O1 = evaluate(om[1], P, a), O2 = evaluate(om[2], P, a), O3 = evaluate(om[3], P, a);
  auto W2 = P.apply(a * P.apply(a)), W3 = P.apply(a * W2);
  t.require(2 * W2 == O1 * O1 + 2 * O2, "2! display on a carrier");
  t.require(6 * W3 == O1 * O1 * O1 + 3 * (O1 * O2 + O2 * O1) + 6 * O3, "3! display on a carrier");
  return {t.pass(), t.detail()};
}

// ---- 7 ----

Outcome pre_magnus() {
  Tally t;
  Rng rng(701);
  IntegrationSeries P(2, 6);
  SeriesLift<IntegrationSeries> outer(P, 4);
  auto a = P.random(rng);
  auto chi = chi_zero(outer, outer.monomial(a, 1));
  auto R = [&](const Series<QMatrix>& v) { return P.apply(v); };
  auto sbr = [](const auto& x, const auto& y) { return x * y - y * x; };
  auto Ra = R(a), Raa = sbr(Ra, a);
  t.require(chi[1] == a, "order 1");
  t.require(chi[2] == ratio(-1, 2) * Raa, "order 2");
  t.require(chi[3] == ratio(1, 4) * sbr(R(Raa), a) + ratio(1, 12) * sbr(Ra, Raa), "order 3");
  auto fourth = ratio(-1, 24) * (sbr(R(sbr(Ra, Raa)), a) + sbr(Ra, sbr(R(Raa), a)) + sbr(R(Raa), Raa)) +
                ratio(-1, 8) * sbr(R(sbr(R(Raa), a)), a);
  t.require(chi[4] == fourth, "order 4");

  IntegrationSeries inst(2, 5);
  for (int i = 0; i < 3; ++i) {
    auto b = inst.random(rng);
    auto x = series_exp(inst.apply(chi_zero(inst, b)), inst.one()[0]);
    t.require(is_zero(x - inst.one() - inst.apply(b * x)), "exp(R(chi)) solves x = 1 + R(ax)");
  }
  return {t.pass(), t.detail()};
}

// ---- 8 ----

Outcome magnus_order_four() {
  Tally t;
  auto A = SampledMatrixFn::airy();
  Eigen::MatrixXd ref = oracle::rkf45_flow([&](double s) { return A(s); }, 0, 1, 1e-12);
  std::vector<double> lh, le;
  for (int inv : {8, 16, 32, 64, 128}) {
    auto r = magnus_solve(A, 0, 1, 1.0 / inv, 4);
    lh.push_back(std::log(1.0 / inv));
    le.push_back(std::log((r.F.back() - ref).norm()));
  }
  const double slope = fitted_slope(lh, le);
  t.within(std::abs(slope - 4.0), 0.3, "|slope - 4|");

  double det = 0;
  for (int inv : {4, 8, 16, 32, 64, 128})
    for (double d : magnus_solve(A, 0, 1, 1.0 / inv, 4).det) det = std::max(det, std::abs(d - 1));
  t.within(det, 1e-10, "magnus |det - 1|");

  double defect = 0;
  for (double d : dyson_solve(A, 0, 1, 0.25, 2).det) defect = std::max(defect, std::abs(d - 1));
  t.require(defect > 1e-6, fmt::format("dyson depth 2 defect {:.2e} not above 1e-6", defect));
  return {t.pass(), t.detail(fmt::format("slope {:.3f}, det drift {:.1e}, dyson defect {:.1e}", slope, det, defect))};
}

// ---- 9 ----

Outcome strichartz() {
  Tally t;
  auto A = SampledMatrixFn::airy();
  RiemannInstance R(1.0, 2000, 2);
  auto a = R.sample([&](double s) { return A(s); });
  auto om = omega_terms(3);
  double worst = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    Eigen::MatrixXd sym = evaluate(om[n], R, a).values.back();
    double d = (sym - strichartz_term(A, n, 1.0)).norm();
    worst = std::max(worst, d);
    t.within(d, 1e-6, fmt::format("strichartz n={}", n));
  }
  for (const auto& B : {SampledMatrixFn::airy(), SampledMatrixFn::preset("shear")})
    t.within((heaviside_omega3(B, 1.0) - strichartz_term(B, 3, 1.0)).norm(), 1e-6, "heaviside " + B.name());
  return {t.pass(), t.detail(fmt::format("max {:.1e}", worst))};
}

// ---- 10 ----

// Fixed-step classical RK4 for the scalar Riccati equation.
double rk4(const RiccatiCoeffs& c, double x0, double t0, double t1, int n = 20000) {
  double x = x0, h = (t1 - t0) / n;
  for (int i = 0; i < n; ++i) {
    double s = t0 + i * h;
    double k1 = c.rhs(s, x), k2 = c.rhs(s + h / 2, x + h * k1 / 2);
    double k3 = c.rhs(s + h / 2, x + h * k2 / 2), k4 = c.rhs(s + h, x + h * k3);
    x += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6;
  }
  return x;
}

std::size_t node_at(const USolution& u, double s) {
  for (std::size_t i = 0; i < u.t.size(); ++i)
    if (std::abs(u.t[i] - s) < 1e-12) return i;
  throw std::runtime_error(fmt::format("no grid node at t = {}", s));
}

Outcome riccati() {
  Tally t;
  const auto tangent = RiccatiCoeffs::constant(1, 0, 1);
  auto ut = solve_u_system(tangent, 0, 1, 0.01);
  const double xt = riccati_general(ut, 0)[node_at(ut, 0.5)];
  t.within(std::abs(xt - std::tan(0.5)), 1e-8, "tangent x(0.5)");
  t.within(std::abs(xt - rk4(tangent, 0, 0, 0.5)), 1e-8, "tangent x(0.5) against rk4");

  const RiccatiCoeffs wavy{[](double s) { return 0.5 * std::sin(s) + 0.2; }, [](double s) { return 0.3 - 0.4 * s; },
                           [](double s) { return 0.2 * std::cos(2 * s) + 0.1; }};
  auto u = solve_u_system(wavy, 0, 0.5, 0.005);
  for (double x0 : {-1.5, 0.4, 1.1})
    t.within(std::abs(riccati_general(u, x0)[node_at(u, 0.5)] - rk4(wavy, x0, 0, 0.5)), 1e-8,
             fmt::format("wavy x(0.5) from {}", x0));

  std::vector<std::vector<double>> xs{riccati_general(u, 0.5), riccati_general(u, -0.7), riccati_general(u, 1.3)};
  auto k = superposition_check(riccati_general(u, 0.1), xs[0], xs[1], xs[2]);
  t.within(k.stddev, 1e-8, "cross-ratio stddev");

  double r1 = 0, r2 = 0, r3 = 0;
  auto one = reduce_by_solutions(wavy, u.t, {xs[0]});
  auto two = reduce_by_solutions(wavy, u.t, {xs[0], xs[1]});
  auto three = reduce_by_solutions(wavy, u.t, xs);
  for (std::size_t i = 0; i < u.t.size(); ++i) {
    r1 = std::max(r1, std::abs(one.a2[i]));
    r2 = std::max({r2, std::abs(two.a2[i]), std::abs(two.a0[i])});
    r3 = std::max({r3, std::abs(three.a2[i]), std::abs(three.a1[i]), std::abs(three.a0[i])});
  }
  t.within(r1, 1e-8, "reduction by one solution");
  t.within(r2, 1e-8, "reduction by two solutions");
  t.within(r3, 1e-8, "reduction by three solutions");
  return {t.pass(), t.detail(fmt::format("x(0.5) = {:.12f}, stddev {:.1e}", xt, k.stddev))};
}

// ---- 11 ----

Outcome faa_di_bruno() {
  Tally t;
  const unsigned N = 8;
  auto h = oracle::chain_rule_oracle(N);
  std::vector<oracle::Sym> g;
  for (unsigned l = 1; l <= N; ++l) g.push_back(oracle::Sym::var(8 + l - 1));
  for (unsigned n = 1; n <= N; ++n) {
    oracle::Sym acc;
    for (unsigned k = 1; k <= n; ++k) acc = acc + oracle::Sym::var(k - 1) * bell(n, k, g, oracle::Sym::constant(1));
    t.require(acc == h[n], fmt::format("symbolic composition n={}", n));
  }
  std::mt19937 rng(1101);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Rational> fc(N), gc(N);
    for (auto& c : fc) c = ratio(num(rng), den(rng));
    for (auto& c : gc) c = ratio(num(rng), den(rng));
    ExpSeries f(fc), gs(gc);
    auto fg = compose_series(f, gs, N);
    for (unsigned n = 1; n <= N; ++n) {
      Rational v = 0;
      for (const auto& [m, c] : h[n].t) {
        Rational term = c;
        for (unsigned i = 0; i < 8; ++i) term *= pow(f[i + 1], m[i]) * pow(gs[i + 1], m[8 + i]);
        v += term;
      }
      t.require(fg[n] == v, fmt::format("compose_series n={}", n));
    }
  }
  for (unsigned n = 1; n <= 9; ++n)
    for (unsigned m = 1; n + m <= 10; ++m)
      t.require(dual_bracket(n, m) == Rational(static_cast<long>(m) - static_cast<long>(n)),
                fmt::format("[b_{}, b_{}]", n, m));
  std::vector<std::size_t> dims;
  for (unsigned d = 1; d <= 5; ++d) dims.push_back(primitive_space(d).size());
  t.require(dims == std::vector<std::size_t>{1, 1, 0, 0, 0}, "primitive dimensions");
  auto p1 = primitive_space(1), p2 = primitive_space(2);
  t.require(p1.size() == 1 && p1[0] == FdbPoly::generator(2), "primitive basis a2");
  t.require(p2.size() == 1 &&
                p2[0] == FdbPoly::generator(3) - ratio(3, 2) * FdbPoly::generator(2) * FdbPoly::generator(2),
            "primitive basis a3 - 3/2 a2^2");
  return {t.pass(), t.detail(fmt::format("primitive dims {}", fmt::join(dims, ",")))};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
  double seconds;  // wall-clock limit, 0 for none
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "CBHD terms Phi_1..Phi_4", cbhd_terms, 5},
      {2, "Eulerian idempotents", eulerian_idempotents, 30},
      {3, "Rota-Baxter relation", rota_baxter, 0},
      {4, "Spitzer identities", spitzer_identities, 0},
      {5, "Bohnenblust-Spitzer", bohnenblust_spitzer, 0},
      {6, "Lam expansion and Chen/Magnus", lam_and_chen, 0},
      {7, "pre-Magnus expansion", pre_magnus, 0},
      {8, "Magnus order four", magnus_order_four, 60},
      {9, "Strichartz and Heaviside", strichartz, 0},
      {10, "Riccati superposition", riccati, 0},
      {11, "Faa di Bruno", faa_di_bruno, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.seconds > 0 && secs > c.seconds) {
      o.pass = false;
      o.detail += fmt::format("; over the {:.0f} s limit", c.seconds);
    }
    if (!o.pass) ++failures;
    fmt::print("criterion {:2}: {} {} ({}; {:.2f} s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail, secs);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures;
}
