#include "hopfflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <fmt/format.h>

#include "hopfflow/cbhd.hpp"
#include "hopfflow/errors.hpp"
#include "hopfflow/faadibruno.hpp"
#include "hopfflow/idempotents.hpp"
#include "hopfflow/magnus.hpp"
#include "hopfflow/scheffers.hpp"
#include "hopfflow/spitzer.hpp"

namespace hopfflow {

namespace {

double magnitude(const FreePoly& p) {
  double m = 0;
  for (const auto& [w, c] : p.terms()) m = std::max(m, std::abs(c.get_d()));
  return m;
}
bool is_zero(const FreePoly& p) { return p.is_zero(); }

double magnitude(const GradedEndo& f) {
  double m = 0;
  for (std::size_t d = 0; d <= f.max_degree(); ++d) m = std::max(m, hopfflow::magnitude(f.block(d)));
  return m;
}
bool is_zero(const GradedEndo& f) { return f.is_zero(); }

// Accumulates "is zero" and a magnitude over trials.
struct Worst {
  bool zero = true;
  double mag = 0;

  template <class V>
  void add(const V& v) {
    if (!is_zero(v)) zero = false;
    mag = std::max(mag, magnitude(v));
  }
  void add_value(double m) {
    if (m != 0) zero = false;
    mag = std::max(mag, m);
  }
};

class Suite {
 public:
  explicit Suite(std::string topic) : topic_(std::move(topic)) {}

  void exact(const std::string& name, const std::string& ref, const Worst& w) {
    out_.push_back({path(name), ref, w.zero, w.mag});
  }
  void bound(const std::string& name, const std::string& ref, double residual, double tol) {
    out_.push_back({path(name), ref, std::isfinite(residual) && residual <= tol, residual});
  }
  void flag(const std::string& name, const std::string& ref, bool ok, double residual) {
    out_.push_back({path(name), ref, ok, residual});
  }
  void per_order(const std::string& name, const std::string& ref, const std::vector<Worst>& ws) {
    for (std::size_t k = 0; k < ws.size(); ++k) exact(fmt::format("{}/order-{:02}", name, k), ref, ws[k]);
  }
  // Runs body; an exception becomes a failing check under `name`.
  template <class F>
  void guarded(const std::string& name, const std::string& ref, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      out_.push_back({path(name) + "/error", ref + ": " + e.what(), false, NAN});
    }
  }
  std::vector<Check> take() {
    std::sort(out_.begin(), out_.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    return std::move(out_);
  }

 private:
  std::string path(const std::string& name) const { return topic_ + "/" + name; }
  std::string topic_;
  std::vector<Check> out_;
};

Rng make_rng(const VerifyConfig& cfg, std::uint64_t salt) { return Rng(cfg.seed * 0x9E3779B97F4A7C15ull + salt); }

std::string nn(std::size_t n) { return fmt::format("n-{:02}", n); }

void accumulate(std::vector<Worst>& ws, const SeriesResidual& r) {
  if (ws.size() < r.per_order.size()) ws.resize(r.per_order.size());
  for (std::size_t k = 0; k < r.per_order.size(); ++k) ws[k].add_value(r.per_order[k]);
}

void require_order(const VerifyConfig& cfg, unsigned max, const char* topic) {
  if (cfg.order < 1 || cfg.order > max)
    throw UsageError(fmt::format("verify {}: --order must lie in 1..{}", topic, max));
}

// ---- rb ----

template <class I>
void rb_battery(Suite& s, const I& inst, const std::string& label, const VerifyConfig& cfg, std::uint64_t salt) {
  Rng rng = make_rng(cfg, salt);
  TildeInstance<I> tilde(inst);
  Worst rel, til, dbl;
  for (unsigned t = 0; t < cfg.trials; ++t) {
    auto a = inst.random(rng), b = inst.random(rng);
    rel.add(rb_residual(inst, a, b));
    til.add(rb_residual(tilde, a, b));
    dbl.add(inst.apply(double_product(inst, a, b)) - inst.apply(a) * inst.apply(b));
  }
  s.exact(label + "/relation", "Rota-Baxter relation", rel);
  s.exact(label + "/tilde", "Rota-Baxter relation for theta id - R", til);
  s.exact(label + "/double-product", "R(a *_R b) = R(a)R(b)", dbl);
}

std::vector<Check> verify_rb(const VerifyConfig& cfg) {
  require_order(cfg, 12, "rb");
  const std::vector<std::string> known{"riemann", "summation", "jackson", "projection", "triangular"};
  if (cfg.instance != "all" && std::find(known.begin(), known.end(), cfg.instance) == known.end())
    throw UsageError(fmt::format("verify rb: unknown instance '{}'", cfg.instance));
  auto want = [&](const char* n) { return cfg.instance == "all" || cfg.instance == n; };
  Suite s("rb");
  if (want("projection")) rb_battery(s, ProjectionInstance(2, cfg.theta), "projection", cfg, 1);
  if (want("triangular")) {
    rb_battery(s, TriangularInstance(3, cfg.theta), "triangular", cfg, 2);
    s.guarded("triangular/atkinson", "Atkinson factorization", [&] {
      Rng rng = make_rng(cfg, 3);
      SeriesLift<TriangularInstance> lift(TriangularInstance(2, cfg.theta), cfg.order);
      Worst w;
      for (unsigned t = 0; t < std::min(cfg.trials, 5u); ++t)
        w.add(atkinson_solve(lift, lift.random(rng)).factorization_residual);
      s.exact("triangular/atkinson", "Atkinson factorization", w);
    });
  }
  if (want("summation")) rb_battery(s, SummationInstance(ratio(1, 2)), "summation", cfg, 4);
  if (want("jackson")) {
    rb_battery(s, JacksonInstance(ratio(1, 3), JacksonInstance::Mode::Pq), "jackson-pq", cfg, 5);
    rb_battery(s, JacksonInstance(ratio(1, 3), JacksonInstance::Mode::PqHat), "jackson-pqhat", cfg, 6);
    rb_battery(s, JacksonInstance(ratio(1, 3), JacksonInstance::Mode::JBar), "jackson-jbar", cfg, 7);
  }
  if (want("riemann")) {
    RiemannInstance inst(1.0, 2000, 1);
    Rng rng = make_rng(cfg, 8);
    double worst = 0;
    for (unsigned t = 0; t < cfg.trials; ++t) {
      auto a = inst.random(rng), b = inst.random(rng);
      worst = std::max(worst, rb_residual(inst, a, b).max_abs());
    }
    s.bound("riemann/relation", "Rota-Baxter relation (Simpson nodes)", worst, 1e-12);
  }
  return s.take();
}

// ---- spitzer ----

template <class B>
void classical_on(Suite& s, const B& base, const std::string& label, const VerifyConfig& cfg, std::uint64_t salt,
                  unsigned trials) {
  Rng rng = make_rng(cfg, salt);
  SeriesLift<B> lift(base, cfg.order);
  std::vector<Worst> ws;
  for (unsigned t = 0; t < trials; ++t) accumulate(ws, classical_spitzer_check(lift, base.random(rng)));
  s.per_order("classical/" + label, "classical Spitzer identity", ws);
}

template <class B>
void nc_on(Suite& s, const B& base, const std::string& label, const VerifyConfig& cfg, std::uint64_t salt,
           unsigned trials) {
  Rng rng = make_rng(cfg, salt);
  SeriesLift<B> lift(base, cfg.order);
  std::vector<Worst> res, fac;
  for (unsigned t = 0; t < trials; ++t) {
    auto r = nc_spitzer_check(lift, base.random(rng));
    accumulate(res, r.residual);
    accumulate(fac, r.factorization);
  }
  s.per_order("nc/" + label, "noncommutative Spitzer identity", res);
  s.per_order("nc/" + label + "/factorization", "exp(theta u) = exp(R~ chi) exp(R chi)", fac);
}

template <class I>
void bohnenblust_on(Suite& s, const I& inst, const std::string& label, const VerifyConfig& cfg, std::uint64_t salt,
                    unsigned n_max, unsigned trials, bool nc) {
  Rng rng = make_rng(cfg, salt);
  for (unsigned n = 1; n <= n_max; ++n) {
    Worst w;
    for (unsigned t = 0; t < trials; ++t) {
      std::vector<typename I::value_type> xs;
      for (unsigned i = 0; i < n; ++i) xs.push_back(inst.random(rng));
      auto sides = nc ? nc_bohnenblust(inst, xs) : bohnenblust_commutative(inst, xs);
      w.add(sides.lhs - sides.rhs);
    }
    s.exact(fmt::format("{}/{}/{}", nc ? "nc-bohnenblust" : "bohnenblust", label, nn(n)),
            nc ? "noncommutative Bohnenblust-Spitzer" : "Bohnenblust-Spitzer", w);
  }
}

void spitzer_classical(Suite& s, const VerifyConfig& cfg) {
  const unsigned trials = std::clamp(cfg.trials, 1u, 3u);
  classical_on(s, ProjectionInstance(1, cfg.theta), "projection", cfg, 11, trials);
  classical_on(s, SummationInstance(ratio(1, 2)), "summation", cfg, 12, trials);
  classical_on(s, JacksonInstance(ratio(1, 3)), "jackson", cfg, 13, trials);
  s.guarded("classical/integration", "classical Spitzer identity", [&] {
    Rng rng = make_rng(cfg, 14);
    IntegrationSeries integ(1, cfg.order);
    std::vector<Worst> ws;
    for (unsigned t = 0; t < trials; ++t) accumulate(ws, classical_spitzer_check(integ, random_qmatrix(1, rng)));
    s.per_order("classical/integration", "classical Spitzer identity at weight zero", ws);
  });
}

void spitzer_nc(Suite& s, const VerifyConfig& cfg) {
  const unsigned trials = std::clamp(cfg.trials, 1u, 3u);
  if (cfg.theta != 0) {
    nc_on(s, ProjectionInstance(2, cfg.theta), "projection", cfg, 21, trials);
    nc_on(s, TriangularInstance(3, cfg.theta), "triangular", cfg, 22, 1);
    Rng rng = make_rng(cfg, 23);
    ProjectionInstance base(1, cfg.theta);
    SeriesLift<ProjectionInstance> lift(base, cfg.order);
    Worst w;
    for (unsigned t = 0; t < trials; ++t) {
      auto u = log_u(lift, lift.monomial(base.random(rng), 1));
      w.add(chi_theta(lift, u) - u);
    }
    s.exact("nc/chi-commutative", "chi^theta = id on commutative carriers", w);
    Worst th;
    ProjectionInstance p2(2, cfg.theta);
    for (unsigned n = 1; n <= 4; ++n)
      for (unsigned t = 0; t < trials; ++t) {
        std::vector<MatPair> xs;
        for (unsigned i = 0; i < n; ++i) xs.push_back(p2.random(rng));
        th.add(theta_identity_residual(p2, xs));
      }
    s.exact("nc/theta-identity", "theta product identity for R and R~", th);
    return;
  }
  // Weight zero: exp(R(chi0(a))) solves x = 1 + R(ax).
  Rng rng = make_rng(cfg, 24);
  IntegrationSeries inst(2, cfg.order);
  Worst eq, closed;
  for (unsigned t = 0; t < trials; ++t) {
    auto a = inst.random(rng);
    auto chi = chi_zero(inst, a);
    auto x = series_exp(inst.apply(chi), inst.one()[0]);
    eq.add(x - inst.one() - inst.apply(a * x));
    closed.add(chi_zero_closed(inst, a) - chi);
  }
  s.exact("nc/weight-zero/integral-equation", "exp(R(chi0(a))) solves x = 1 + R(ax)", eq);
  s.exact("nc/weight-zero/closed-form", "closed form of chi0", closed);
}

void spitzer_bohnenblust(Suite& s, const VerifyConfig& cfg) {
  const unsigned trials = std::clamp(cfg.trials, 1u, 10u);
  bohnenblust_on(s, ProjectionInstance(1, cfg.theta), "projection", cfg, 31, 5, trials, false);
  bohnenblust_on(s, SummationInstance(ratio(1, 2)), "summation", cfg, 32, 5, trials, false);
  bohnenblust_on(s, JacksonInstance(ratio(1, 2), JacksonInstance::Mode::Pq), "jackson", cfg, 33, 5, trials, false);
}

void spitzer_nc_bohnenblust(Suite& s, const VerifyConfig& cfg) {
  const unsigned trials = std::max(cfg.trials, 1u);
  bohnenblust_on(s, TriangularInstance(3, cfg.theta), "triangular", cfg, 41, 4, trials, true);
  bohnenblust_on(s, ProjectionInstance(2, cfg.theta), "projection", cfg, 42, 4, trials, true);
  // n = 3 term by term in product form.
  Rng rng = make_rng(cfg, 43);
  TriangularInstance inst(3, cfg.theta);
  auto R = [&](const QMatrix& v) { return inst.apply(v); };
  auto dot = [&](const QMatrix& a, const QMatrix& b) { return pre_lie(inst, a, b); };
  Worst w;
  for (unsigned t = 0; t < std::clamp(cfg.trials, 1u, 10u); ++t) {
    std::vector<QMatrix> x{inst.random(rng), inst.random(rng), inst.random(rng)};
    QMatrix product_form = R(x[0]) * R(x[1]) * R(x[2]) + R(dot(x[1], x[0])) * R(x[2]) +
                           R(dot(x[2], x[0])) * R(x[1]) + R(dot(x[2], dot(x[1], x[0]))) +
                           R(x[0]) * R(dot(x[2], x[1])) + R(dot(x[1], dot(x[2], x[0])));
    w.add(nc_bohnenblust(inst, x).lhs - product_form);
  }
  s.exact("nc-bohnenblust/triangular/n-03-expansion", "three-argument noncommutative expansion", w);
}

void spitzer_lam(Suite& s, const VerifyConfig& cfg) {
  Rng rng = make_rng(cfg, 51);
  TriangularInstance inst(3, cfg.theta);
  const unsigned trials = std::clamp(cfg.trials, 1u, 3u);
  std::vector<Worst> level(cfg.order + 1);
  Worst first, k3;
  for (unsigned t = 0; t < trials; ++t) {
    auto lam = lam_expansion(inst, inst.random(rng), std::max(cfg.order, 3u));
    for (unsigned n = 1; n <= cfg.order; ++n) level[n].add(lam.rblevel_residual[n]);
    const auto& C = lam.C;
    const auto& W = lam.words;
    first.add(2 * W[2] - (C[1] * C[1] + C[2]));
    first.add(6 * W[3] - (C[1] * C[1] * C[1] + 2 * C[2] * C[1] + C[1] * C[2] + 2 * C[3]));
    k3.add(lam.K[3] - (ratio(1, 3) * C[3] + ratio(1, 12) * (C[2] * C[1] - C[1] * C[2])));
  }
  level.erase(level.begin());
  for (std::size_t n = 0; n < level.size(); ++n)
    s.exact(fmt::format("lam/rblevel/order-{:02}", n + 1), "Rota-Baxter words from the C chain", level[n]);
  s.exact("lam/first-terms", "2!(Rx)^[2] and 3!(Rx)^[3] in the C chain", first);
  s.exact("lam/k3", "K3 = C3/3 + [C2,C1]/12", k3);
  SeriesLift<TriangularInstance> lift(inst, std::min(cfg.order, 4u));
  std::vector<Worst> chi, log;
  for (unsigned t = 0; t < trials; ++t) {
    auto r = lam_series_check(lift, inst.random(rng));
    accumulate(chi, r.against_chi);
    accumulate(log, r.against_log);
  }
  s.per_order("lam/k-series/chi", "K series against -R(chi)", chi);
  s.per_order("lam/k-series/log", "K series against the log of the word sum", log);
}

std::vector<Check> verify_spitzer(const VerifyConfig& cfg) {
  require_order(cfg, 8, "spitzer");
  const std::map<std::string, void (*)(Suite&, const VerifyConfig&)> variants{
      {"classical", spitzer_classical},   {"nc", spitzer_nc}, {"bohnenblust", spitzer_bohnenblust},
      {"nc-bohnenblust", spitzer_nc_bohnenblust}, {"lam", spitzer_lam}};
  Suite s("spitzer");
  if (cfg.variant == "all") {
    for (const auto& [name, fn] : variants) s.guarded(name, name, [&] { fn(s, cfg); });
  } else {
    auto it = variants.find(cfg.variant);
    if (it == variants.end()) throw UsageError(fmt::format("verify spitzer: unknown variant '{}'", cfg.variant));
    s.guarded(it->first, it->first, [&] { it->second(s, cfg); });
  }
  return s.take();
}

// ---- idempotents ----

std::vector<Check> verify_idempotents(const VerifyConfig& cfg) {
  require_order(cfg, 7, "idempotents");
  const std::size_t N = cfg.order;
  Suite s("idempotents");
  for (auto [side, label] : {std::pair{HopfSide::ConcatUnshuffle, "concat"}, {HopfSide::ShuffleDeconcat, "shuffle"}}) {
    std::vector<GradedEndo> pi;
    for (std::size_t n = 0; n <= N; ++n) pi.push_back(eulerian(n, N, 2, side));
    GradedEndo sum(2, N, side);
    for (const auto& p : pi) sum += p;
    Worst complete, ortho;
    complete.add(sum - GradedEndo::identity(2, N, side));
    for (std::size_t m = 0; m <= N; ++m)
      for (std::size_t k = 0; k <= N; ++k) ortho.add(pi[m] * pi[k] - (m == k ? pi[k] : GradedEndo(2, N, side)));
    s.exact(fmt::format("{}/completeness", label), "sum of Eulerian idempotents is the identity", complete);
    s.exact(fmt::format("{}/orthogonality", label), "pi_m pi_k = delta pi_k", ortho);
  }
  for (unsigned n = 1; n <= std::min<unsigned>(cfg.order, 6); ++n) {
    std::vector<Letter> l(n);
    for (unsigned i = 0; i < n; ++i) l[i] = i;
    Worst w;
    w.add(descent_pi1_word(n) - pi1_word(Word(l)));
    s.exact(fmt::format("descent/{}", nn(n)), "descent formula equals log* id on multilinear words", w);
  }
  auto p1 = eulerian(1, N);
  for (std::size_t d = 1; d <= N; ++d) {
    bool ok = true;
    for (const auto& w : words_of_degree(2, d)) ok = ok && is_primitive(p1.apply(w));
    s.flag(fmt::format("pi1-primitive/degree-{:02}", d), "image of pi_1 is primitive", ok, ok ? 0 : 1);
  }
  Worst adams_w;
  GradedEndo expansion(2, N, HopfSide::ConcatUnshuffle);
  for (std::size_t m = 0; m <= N; ++m) expansion += pow(Rational(3), static_cast<long>(m)) * eulerian(m, N);
  adams_w.add(adams(3, N) - expansion);
  adams_w.add(adams(2, N) * adams(3, N) - adams(6, N));
  s.exact("adams", "id^{*l} = sum l^m pi_m and Adams composition", adams_w);
  return s.take();
}

// ---- cbhd ----

std::vector<Check> verify_cbhd(const VerifyConfig& cfg) {
  require_order(cfg, 8, "cbhd");
  Suite s("cbhd");
  FreePoly sum;
  for (std::size_t m = 1; m <= cfg.order; ++m) {
    FreePoly p = phi_m(2, m);
    sum += p;
    s.flag(fmt::format("phi/degree-{:02}/lie", m), "Phi_m is a Lie element", is_lie_element(p), 0);
    Worst eig, nested;
    eig.add(dynkin(p) - Rational(static_cast<long>(m)) * p);
    nested.add(expand(to_nested_commutators(p)) - p);
    s.exact(fmt::format("phi/degree-{:02}/dynkin", m), "D Phi_m = m Phi_m", eig);
    s.exact(fmt::format("phi/degree-{:02}/commutators", m), "nested commutator form expands to Phi_m", nested);
  }
  Worst pipe;
  pipe.add(cbhd_log(cfg.order) - sum);
  s.exact("pipelines", "log(e^X e^Y) equals the sum of Phi_m", pipe);
  Worst multi;
  for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.order, 5); ++n) {
    FreePoly multilinear;
    const FreePoly phi = phi_m(n, n);
    for (const auto& [w, c] : phi.terms()) {
      std::vector<Letter> l = w.letters();
      std::sort(l.begin(), l.end());
      if (std::adjacent_find(l.begin(), l.end()) == l.end()) multilinear.add_term(w, c);
    }
    std::vector<Letter> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = static_cast<Letter>(i);
    multi.add(multilinear - pi1_word(Word(l)));
  }
  s.exact("multilinear-part", "multilinear part of Phi_n is pi_1", multi);
  // Small matrices: the truncation error is O(scale^{N+1}).
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> U(-1, 1);
  const double scale = 0.01;
  Eigen::MatrixXd A(3, 3), B(3, 3);
  for (Eigen::Index i = 0; i < 9; ++i) A(i) = scale * U(rng), B(i) = scale * U(rng);
  Eigen::MatrixXd exact_log = cbhd_eval(A, B, 12);
  double err = (cbhd_eval(A, B, cfg.order) - exact_log).norm();
  s.bound("matrix-truncation", "log(e^A e^B) on small matrices", err, 50 * std::pow(6 * scale, cfg.order + 1));
  return s.take();
}

// ---- magnus ----

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

std::vector<Check> verify_magnus(const VerifyConfig& cfg) {
  require_order(cfg, 8, "magnus");
  Suite s("magnus");
  const std::size_t M = std::min<std::size_t>(cfg.order, 5);
  s.guarded("omega", "Omega terms", [&] {
    Rng rng = make_rng(cfg, 61);
    IntegrationSeries P(2, M + 2);
    SeriesLift<IntegrationSeries> outer(P, M);
    auto a = P.random(rng);
    auto chi = chi_zero(outer, outer.monomial(a, 1));
    auto om = omega_terms(M);
    std::vector<Series<QMatrix>> W{P.one()};
    for (std::size_t n = 1; n <= M; ++n) W.push_back(P.apply(a * W.back()));
    std::vector<Series<QMatrix>> letters(W.begin() + 1, W.end());
    auto table = chen_to_magnus(M);
    auto pl = pre_lie_magnus_terms(P, a);
    for (std::size_t n = 1; n <= M; ++n) {
      auto sym = evaluate(om[n], P, a);
      Worst fixed, chen;
      fixed.add(sym - P.apply(chi[n]));
      chen.add(sym - evaluate(table[n], letters, P.one(), P.zero(),
                              [](const Rational& c, const Series<QMatrix>& v) { return c * v; }));
      s.exact(fmt::format("omega/order-{:02}/fixed-point", n), "Omega_n = R(chi0_n)", fixed);
      s.exact(fmt::format("omega/order-{:02}/chen-log", n), "Omega_n from the log of the word sum", chen);
      if (n <= 4) {
        Worst pre;
        pre.add(chi[n] - pl[n]);
        s.exact(fmt::format("omega/order-{:02}/pre-lie", n), "chi0 in pre-Lie products", pre);
      }
    }
  });
  {
    auto c2m = chen_to_magnus(cfg.order), m2c = magnus_to_chen(cfg.order);
    std::vector<FreePoly> omegas(c2m.begin() + 1, c2m.end()), words(m2c.begin() + 1, m2c.end());
    for (std::size_t n = 1; n <= cfg.order; ++n) {
      Worst w;
      const auto l = FreePoly::letter(static_cast<Letter>(n - 1));
      w.add(substitute_letters(m2c[n], omegas) - l);
      w.add(substitute_letters(c2m[n], words) - l);
      s.exact(fmt::format("chen-roundtrip/order-{:02}", n), "Chen and Magnus tables are inverse", w);
    }
  }
  auto A = SampledMatrixFn::airy();
  {
    RiemannInstance R(1.0, 2000, 2);
    auto a = R.sample([&](double t) { return A(t); });
    auto om = omega_terms(3);
    for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.order, 3); ++n) {
      Eigen::MatrixXd sym = evaluate(om[n], R, a).values.back();
      s.bound(fmt::format("strichartz/n-{:02}", n), "Strichartz form against Omega_n", (sym - strichartz_term(A, n, 1.0)).norm(),
              1e-6);
    }
    s.bound("heaviside-omega3", "Heaviside form of Omega_3", (heaviside_omega3(A, 1.0) - strichartz_term(A, 3, 1.0)).norm(),
            1e-6);
  }
  {
    Eigen::MatrixXd ref = reference_flow(A, 0, 1, 1e-12);
    std::vector<double> lh, le;
    for (int inv : {8, 16, 32, 64, 128}) {
      lh.push_back(std::log(1.0 / inv));
      le.push_back(std::log((magnus_solve(A, 0, 1, 1.0 / inv, 4).F.back() - ref).norm()));
    }
    double slope = fitted_slope(lh, le);
    s.bound("magnus4/slope", "order-4 Magnus convergence slope", std::abs(slope - 4.0), 0.3);
    double mdef = 0, ddef = 0;
    for (double d : magnus_solve(A, 0, 1, 0.25, 4).det) mdef = std::max(mdef, std::abs(d - 1));
    for (double d : dyson_solve(A, 0, 1, 0.25, 2).det) ddef = std::max(ddef, std::abs(d - 1));
    s.bound("magnus4/det", "Magnus flow stays in SL(2)", mdef, 1e-10);
    s.flag("dyson2/det-drift", "Dyson depth 2 leaves SL(2)", ddef > 1e-6, ddef);
  }
  return s.take();
}

// ---- riccati ----

std::vector<Check> verify_riccati(const VerifyConfig&) {
  Suite s("riccati");
  s.guarded("tangent", "tan solution", [&] {
    auto u = solve_u_system(RiccatiCoeffs::constant(1, 0, 1), 0, 0.5, 0.001);
    double x = riccati_general(u, 0).back();
    s.bound("tangent", "x' = 1 + x^2 from 0 gives tan", std::abs(x - std::tan(0.5)), 1e-8);
  });
  const RiccatiCoeffs c{[](double t) { return 0.5 * std::sin(t) + 0.2; }, [](double t) { return 0.3 - 0.4 * t; },
                        [](double t) { return 0.2 * std::cos(2 * t) + 0.1; }};
  s.guarded("superposition", "cross-ratio", [&] {
    auto u = solve_u_system(c, 0, 0.5, 0.005);
    std::vector<std::vector<double>> xs;
    for (double x0 : {0.37, 0.5, -0.7, 1.3}) xs.push_back(riccati_general(u, x0));
    auto k = superposition_check(xs[0], xs[1], xs[2], xs[3]);
    s.bound("superposition/cross-ratio", "cross-ratio of four solutions is constant", k.stddev, 1e-8);
    s.bound("general-solution/residual", "general solution satisfies the ODE", ode_residual(c, u.t, xs[0]), 1e-7);
    auto one = reduce_by_solutions(c, u.t, {xs[1]});
    auto two = reduce_by_solutions(c, u.t, {xs[1], xs[2]});
    auto three = reduce_by_solutions(c, u.t, {xs[1], xs[2], xs[3]});
    double r1 = 0, r2 = 0, r3 = 0;
    for (std::size_t i = 0; i < u.t.size(); ++i) {
      r1 = std::max(r1, std::abs(one.a2[i]));
      r2 = std::max({r2, std::abs(two.a2[i]), std::abs(two.a0[i])});
      r3 = std::max({r3, std::abs(three.a2[i]), std::abs(three.a1[i]), std::abs(three.a0[i])});
    }
    s.bound("reduction/one", "one solution removes the quadratic term", r1, 1e-8);
    s.bound("reduction/two", "two solutions leave a linear equation", r2, 1e-8);
    s.bound("reduction/three", "three solutions trivialize the equation", r3, 1e-8);
    s.bound("darboux", "coordinates solve the Lie system", darboux_residual(c, u), 1e-8);
  });
  s.guarded("sl2", "sl2 flow", [&] {
    auto f = sl2_flow(RiccatiCoeffs::constant(1, 0, 1), 0, 0.5, 1.0 / 256);
    double def = 0;
    for (double d : f.det) def = std::max(def, std::abs(d - 1));
    s.bound("sl2/det", "Magnus sl2 flow stays in SL(2)", def, 1e-10);
    s.bound("sl2/tangent", "Mobius action of the flow gives tan", std::abs(mobius(f.F.back(), 0) - std::tan(0.5)), 1e-8);
  });
  return s.take();
}

// ---- faadibruno ----

std::vector<Check> verify_faadibruno(const VerifyConfig& cfg) {
  require_order(cfg, 8, "faadibruno");
  const unsigned n_max = cfg.order + 2;
  Suite s("faadibruno");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  auto random_series = [&] {
    std::vector<Rational> f(n_max);
    for (auto& x : f) x = ratio(num(rng), den(rng));
    f[0] = 1;
    return ExpSeries(f);
  };
  for (unsigned n = 2; n <= n_max; ++n) {
    auto d = coassociativity_defect(n);
    s.flag(fmt::format("coassociativity/{}", nn(n)), "coassociativity of the Faa di Bruno coproduct", d == 0,
           static_cast<double>(d));
    Worst dual;
    for (unsigned t = 0; t < std::clamp(cfg.trials, 1u, 5u); ++t) {
      auto f = random_series(), g = random_series();
      dual.add_value(std::abs(duality_defect(n, f, g).get_d()));
    }
    s.exact(fmt::format("duality/{}", nn(n)), "coproduct pairs with composition", dual);
    FdbPoly left, right;
    const FdbTensor delta = fdb_coproduct(n);
    for (const auto& [k, c] : delta.terms()) {
      FdbPoly l = FdbPoly::monomial(k.first), r = FdbPoly::monomial(k.second);
      left += c * (antipode(l) * r);
      right += c * (l * antipode(r));
    }
    s.flag(fmt::format("antipode/{}", nn(n)), "antipode is the convolution inverse",
           left.is_zero() && right.is_zero(), left.is_zero() && right.is_zero() ? 0 : 1);
  }
  for (unsigned n = 1; n < n_max; ++n)
    for (unsigned m = 1; n + m <= n_max; ++m)
      s.guarded(fmt::format("bracket/{:02}-{:02}", n, m), "dual bracket", [&] {
        Rational c = dual_bracket(n, m);
        Rational d = c - Rational(static_cast<long>(m) - static_cast<long>(n));
        s.flag(fmt::format("bracket/{:02}-{:02}", n, m), "[b'_n, b'_m] = (m - n) b'_{n+m}", d == 0,
               std::abs(d.get_d()));
      });
  for (unsigned d = 1; d <= std::min(cfg.order, 5u); ++d) {
    const std::size_t expect = d <= 2 ? 1 : 0;
    auto dim = primitive_space(d).size();
    s.flag(fmt::format("primitives/degree-{:02}", d), "dimension of the primitive space", dim == expect,
           std::abs(static_cast<double>(dim) - static_cast<double>(expect)));
  }
  return s.take();
}

}  // namespace

const std::vector<std::string>& verify_topics() {
  static const std::vector<std::string> topics{"cbhd", "faadibruno", "idempotents", "magnus",
                                               "rb",   "riccati",    "spitzer"};
  return topics;
}

std::vector<Check> verify_topic(const std::string& topic, const VerifyConfig& cfg) {
  if (topic == "rb") return verify_rb(cfg);
  if (topic == "spitzer") return verify_spitzer(cfg);
  if (topic == "idempotents") return verify_idempotents(cfg);
  if (topic == "cbhd") return verify_cbhd(cfg);
  if (topic == "magnus") return verify_magnus(cfg);
  if (topic == "riccati") return verify_riccati(cfg);
  if (topic == "faadibruno") return verify_faadibruno(cfg);
  throw UsageError(fmt::format("verify: unknown topic '{}'", topic));
}

}  // namespace hopfflow
