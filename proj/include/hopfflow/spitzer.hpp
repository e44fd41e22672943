#pragma once

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

#include "hopfflow/cbhd.hpp"
#include "hopfflow/combinatorics.hpp"
#include "hopfflow/errors.hpp"
#include "hopfflow/evaluate.hpp"
#include "hopfflow/rotabaxter.hpp"

namespace hopfflow {

// Series carriers: unital, complete filtered, truncated at order().
template <class I>
concept FilteredInstance = UnitalRBInstance<I> && requires(const I& i, const typename I::value_type& v,
                                                           const typename I::base_value& b) {
  { i.filtration_shift() } -> std::convertible_to<std::size_t>;
  { i.order() } -> std::convertible_to<std::size_t>;
  { i.monomial(b, std::size_t{1}) } -> std::convertible_to<typename I::value_type>;
  { v.filtration() } -> std::convertible_to<std::size_t>;
};

struct SeriesResidual {
  // Magnitude of each t^k coefficient of lhs − rhs.
  std::vector<double> per_order;
  bool exact = true;

  double max() const { return per_order.empty() ? 0.0 : *std::max_element(per_order.begin(), per_order.end()); }
};

template <class V>
SeriesResidual series_residual(const Series<V>& lhs, const Series<V>& rhs) {
  Series<V> d = lhs - rhs;
  SeriesResidual r;
  for (std::size_t k = 0; k <= d.order(); ++k) {
    r.per_order.push_back(magnitude(d[k]));
    if (!is_zero(d[k])) r.exact = false;
  }
  return r;
}

namespace detail {

template <class V>
auto scale_by() {
  return [](const Rational& c, const V& v) { return c * v; };
}

}  // namespace detail

// Σ_{n≥0} (R(A))^{[n]} with (RA)^{[n+1]} = R(A(RA)^{[n]}).
template <FilteredInstance I>
typename I::value_type rb_word_sum(const I& inst, const typename I::value_type& A) {
  auto W = inst.one(), S = inst.one();
  for (std::size_t k = 1; k <= inst.order() + 1; ++k) {
    W = inst.apply(A * W);
    if (is_zero(W)) break;
    S = S + W;
  }
  return S;
}

// θ^{-1} log(1 − θA) = −Σ θ^{n−1} A^n / n; valid at θ = 0 as −A.
template <FilteredInstance I>
typename I::value_type log_u(const I& inst, const typename I::value_type& A) {
  const Rational theta = inst.weight();
  auto u = inst.zero(), power = inst.one();
  for (std::size_t n = 1; n <= inst.order(); ++n) {
    power = power * A;
    if (is_zero(power)) break;
    Rational c = -pow(theta, static_cast<long>(n) - 1) / Rational(static_cast<long>(n));
    if (c != 0) u = u + c * power;
  }
  return u;
}

// exp(−R(θ^{-1}log(1−θat))) against Σ t^n (R(at))^{[n]}.
template <FilteredInstance I>
SeriesResidual classical_spitzer_check(const I& inst, const typename I::base_value& a) {
  if (!inst.commutative()) throw NonCommutativeCarrier("classical_spitzer_check: carrier is not commutative");
  auto A = inst.monomial(a, 1);
  auto lhs = series_exp(-inst.apply(log_u(inst, A)), inst.one()[0]);
  return series_residual(lhs, rb_word_sum(inst, A));
}

// Fixed point of χ(u) = u + θ^{-1} CBHD(θu, −R(χ(u))) through the carrier order.
template <FilteredInstance I>
typename I::value_type chi_theta(const I& inst, const typename I::value_type& u) {
  using V = typename I::value_type;
  const Rational theta = inst.weight();
  if (theta == 0) throw ThetaZero("chi_theta: weight is zero, use chi_zero");
  if (!u.zero() && u.filtration() < 1) throw NotFiltered("chi_theta: argument must lie in A^1");
  const FreePoly& tail = cbhd_tail(inst.order());
  const V one = inst.one(), zero = inst.zero();
  const V tu = theta * u;
  V chi = u;
  for (std::size_t it = 0; it <= inst.order() + 1; ++it) {
    V next = u + (1 / theta) * evaluate(tail, std::vector<V>{tu, -inst.apply(chi)}, one, zero, detail::scale_by<V>());
    if (next == chi) break;
    chi = std::move(next);
  }
  return chi;
}

// exp(θu) against exp(R̃(χ))exp(R(χ)).
template <FilteredInstance I>
SeriesResidual factorization_check(const I& inst, const typename I::value_type& u,
                                   const typename I::value_type& chi) {
  const auto one = inst.one()[0];
  TildeInstance<I> tilde(inst);
  auto lhs = series_exp(inst.weight() * u, one);
  auto rhs = series_exp(tilde.apply(chi), one) * series_exp(inst.apply(chi), one);
  return series_residual(lhs, rhs);
}

template <class V>
struct NcSpitzerResult {
  SeriesResidual residual;
  SeriesResidual factorization;
  V chi;
};

// exp(−R(χ^θ(θ^{-1}log(1−θat)))) against Σ t^n (R(at))^{[n]}.
template <FilteredInstance I>
NcSpitzerResult<typename I::value_type> nc_spitzer_check(const I& inst, const typename I::base_value& a) {
  auto A = inst.monomial(a, 1);
  auto u = log_u(inst, A);
  auto chi = chi_theta(inst, u);
  auto lhs = series_exp(-inst.apply(chi), inst.one()[0]);
  return {series_residual(lhs, rb_word_sum(inst, A)), factorization_check(inst, u, chi), chi};
}

// ---- Bohnenblust–Spitzer ----

template <class V>
struct Sides {
  V lhs, rhs;
};

// Σ_σ R(x_{σ1} R(x_{σ2} ⋯ R(x_{σn})⋯)).
template <RBInstance I>
typename I::value_type symmetrized_rb_words(const I& inst, const std::vector<typename I::value_type>& xs) {
  using V = typename I::value_type;
  std::vector<std::size_t> perm(xs.size());
  std::iota(perm.begin(), perm.end(), 0);
  V acc = inst.zero();
  if (xs.empty()) return acc;
  do {
    V w = inst.apply(xs[perm.back()]);
    for (std::size_t i = perm.size() - 1; i-- > 0;) w = inst.apply(xs[perm[i]] * w);
    acc = acc + w;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

// Commutative form: right side sums over set partitions with
// θ^{n−|T|} Π (|T|−1)! R(Π_{j∈T} s_j).
template <RBInstance I>
Sides<typename I::value_type> bohnenblust_commutative(const I& inst, const std::vector<typename I::value_type>& s) {
  using V = typename I::value_type;
  if (s.empty()) throw std::invalid_argument("bohnenblust_commutative: need at least one argument");
  V rhs = inst.zero();
  const auto n = static_cast<unsigned>(s.size());
  for (const auto& blocks : set_partitions(n)) {
    Rational c = pow(inst.weight(), static_cast<long>(n - blocks.size()));
    if (c == 0) continue;
    V prod;
    bool first = true;
    for (const auto& b : blocks) {
      c *= factorial(static_cast<unsigned>(b.size() - 1));
      V inner = s[b[0]];
      for (std::size_t j = 1; j < b.size(); ++j) inner = inner * s[b[j]];
      V Rb = inst.apply(inner);
      prod = first ? Rb : prod * Rb;
      first = false;
    }
    rhs = rhs + c * prod;
  }
  return {symmetrized_rb_words(inst, s), rhs};
}

// x_{σ1} ⋄ x_{σ2} ⋄ ⋯ ⋄ x_{σn} for one permutation (zero-based indices):
// ⋄_i is *_R when σ_i is below every later σ_j, otherwise ·_R; runs of ·_R are
// bracketed right to left and evaluated before the *_R products.
template <RBInstance I>
typename I::value_type diamond_word(const I& inst, const std::vector<typename I::value_type>& xs,
                                    const std::vector<std::size_t>& sigma) {
  using V = typename I::value_type;
  const std::size_t n = sigma.size();
  std::vector<std::pair<std::size_t, std::size_t>> segments;
  std::size_t start = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    bool star = std::all_of(sigma.begin() + i + 1, sigma.end(), [&](std::size_t s) { return sigma[i] < s; });
    if (star) {
      segments.emplace_back(start, i);
      start = i + 1;
    }
  }
  segments.emplace_back(start, n - 1);
  V total;
  bool first = true;
  for (auto [lo, hi] : segments) {
    V v = xs[sigma[hi]];
    for (std::size_t k = hi; k-- > lo;) v = pre_lie(inst, xs[sigma[k]], v);
    total = first ? v : double_product(inst, total, v);
    first = false;
  }
  return total;
}

template <RBInstance I>
Sides<typename I::value_type> nc_bohnenblust(const I& inst, const std::vector<typename I::value_type>& xs) {
  using V = typename I::value_type;
  if (xs.empty()) throw std::invalid_argument("nc_bohnenblust: need at least one argument");
  std::vector<std::size_t> perm(xs.size());
  std::iota(perm.begin(), perm.end(), 0);
  V rhs = inst.zero();
  do {
    rhs = rhs + inst.apply(diamond_word(inst, xs, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {symmetrized_rb_words(inst, xs), rhs};
}

// θΠR(x_i) − R(ΠR(x_i) − ΠR̃(−x_i)).
template <RBInstance I>
typename I::value_type theta_identity_residual(const I& inst, const std::vector<typename I::value_type>& xs) {
  using V = typename I::value_type;
  TildeInstance<I> tilde(inst);
  V pr = inst.apply(xs.at(0)), pt = tilde.apply(-xs.at(0));
  for (std::size_t i = 1; i < xs.size(); ++i) {
    pr = pr * inst.apply(xs[i]);
    pt = pt * tilde.apply(-xs[i]);
  }
  return inst.weight() * pr - inst.apply(pr - pt);
}

// ---- weight-zero recursion ----

// b_n = B_n / n! for n ≤ N.
inline std::vector<Rational> bernoulli_coefficients(unsigned N) {
  auto B = bernoulli_numbers(N);
  for (unsigned n = 0; n <= N; ++n) B[n] /= factorial(n);
  return B;
}

template <class I>
void require_weight_zero(const I& inst, const typename I::value_type& a, const char* who) {
  if (inst.weight() != 0) throw NonzeroWeight(std::string(who) + ": weight must be zero");
  if (!a.zero() && a.filtration() + inst.filtration_shift() < 1)
    throw NotFiltered(std::string(who) + ": argument is not topologically nilpotent");
}

// Fixed point of χ⁰(a) = Σ_n b_n (ad R(χ⁰(a)))^n (a).
template <FilteredInstance I>
typename I::value_type chi_zero(const I& inst, const typename I::value_type& a) {
  using V = typename I::value_type;
  require_weight_zero(inst, a, "chi_zero");
  const unsigned M = static_cast<unsigned>(inst.order()) + 1;
  const auto b = bernoulli_coefficients(M);
  V chi = a;
  for (std::size_t it = 0; it <= M + 1; ++it) {
    V Rc = inst.apply(chi), y = a, next = a;
    for (unsigned n = 1; n <= M; ++n) {
      y = commutator(Rc, y);
      if (is_zero(y)) break;
      if (b[n] != 0) next = next + b[n] * y;
    }
    if (next == chi) break;
    chi = std::move(next);
  }
  return chi;
}

// χ⁰_n(a) for n = 1..n_max from products of Rota–Baxter words with one R
// stripped; index 0 is zero.
template <FilteredInstance I>
std::vector<typename I::value_type> chi_zero_closed_terms(const I& inst, const typename I::value_type& a,
                                                          unsigned n_max) {
  using V = typename I::value_type;
  require_weight_zero(inst, a, "chi_zero_closed");
  std::vector<V> W{inst.one()};
  for (unsigned k = 1; k <= n_max; ++k) W.push_back(inst.apply(a * W.back()));
  std::vector<V> out(n_max + 1, inst.zero());
  for (unsigned n = 1; n <= n_max; ++n) {
    for (const auto& comp : compositions(n)) {
      const std::size_t k = comp.size();
      Rational c = Rational(k % 2 ? 1 : -1, static_cast<long>(k));
      for (std::size_t j = 0; j < k; ++j) {
        V prod = inst.one();
        for (std::size_t i = 0; i < k; ++i) prod = prod * (i == j ? a * W[comp[i] - 1] : W[comp[i]]);
        out[n] = out[n] + c * prod;
      }
    }
  }
  return out;
}

template <FilteredInstance I>
typename I::value_type chi_zero_closed(const I& inst, const typename I::value_type& a) {
  auto terms = chi_zero_closed_terms(inst, a, static_cast<unsigned>(inst.order()) + 1);
  auto acc = inst.zero();
  for (const auto& t : terms) acc = acc + t;
  return acc;
}

// ---- Lam's expansion ----

template <class V>
struct LamResult {
  // C[n] = R(x ·_R (x ·_R ⋯ x)), n factors; C[0] unused.
  std::vector<V> C;
  // Rota–Baxter words (Rx)^{[n]}, n = 0..N.
  std::vector<V> words;
  // (Rx)^{[n]} minus the composition formula in the C's; index 0 unused.
  std::vector<V> rblevel_residual;
  // K[1..min(N,4)].
  std::vector<V> K;
};

template <UnitalRBInstance I>
LamResult<typename I::value_type> lam_expansion(const I& inst, const typename I::value_type& x, unsigned N) {
  using V = typename I::value_type;
  LamResult<V> r;
  r.C.push_back(inst.zero());
  V chain = x;
  for (unsigned n = 1; n <= N; ++n) {
    if (n > 1) chain = pre_lie(inst, x, chain);
    r.C.push_back(inst.apply(chain));
  }
  r.words.push_back(inst.one());
  for (unsigned n = 1; n <= N; ++n) r.words.push_back(inst.apply(x * r.words.back()));
  r.rblevel_residual.push_back(inst.zero());
  for (unsigned n = 1; n <= N; ++n) {
    V sum = inst.zero();
    for (const auto& comp : compositions(n)) {
      // k_l (k_{l−1}+k_l) ⋯ (k_1+⋯+k_l)
      long denom = 1, tail = 0;
      for (std::size_t i = comp.size(); i-- > 0;) {
        tail += comp[i];
        denom *= tail;
      }
      V prod = r.C[comp[0]];
      for (std::size_t i = 1; i < comp.size(); ++i) prod = prod * r.C[comp[i]];
      sum = sum + ratio(1, denom) * prod;
    }
    r.rblevel_residual.push_back(r.words[n] - sum);
  }
  const auto& C = r.C;
  r.K.push_back(inst.zero());
  if (N >= 1) r.K.push_back(C[1]);
  if (N >= 2) r.K.push_back(ratio(1, 2) * C[2]);
  if (N >= 3) r.K.push_back(ratio(1, 3) * C[3] + ratio(1, 12) * commutator(C[2], C[1]));
  if (N >= 4) r.K.push_back(ratio(1, 4) * C[4] + ratio(1, 12) * commutator(C[3], C[1]));
  return r;
}

struct LamSeriesCheck {
  // Σ K_i t^i against −R(χ^θ(θ^{-1}log(1−θat))); against R(χ⁰(at)) at weight 0.
  SeriesResidual against_chi;
  // Σ K_i t^i against log Σ (R(at))^{[n]}.
  SeriesResidual against_log;
};

// Both comparisons truncated at t^min(order, 4).
template <FilteredInstance I>
LamSeriesCheck lam_series_check(const I& inst, const typename I::base_value& a) {
  using V = typename I::value_type;
  const std::size_t M = std::min<std::size_t>(inst.order(), 4);
  V A = inst.monomial(a, 1);
  auto lam = lam_expansion(inst, A, static_cast<unsigned>(M));
  V ksum = inst.zero();
  for (std::size_t i = 1; i <= M; ++i) ksum = ksum + lam.K[i];
  V target = inst.weight() == 0 ? inst.apply(chi_zero(inst, A)) : -inst.apply(chi_theta(inst, log_u(inst, A)));
  V logw = series_log1p(rb_word_sum(inst, A) - inst.one());
  return {series_residual(ksum.truncated(M), target.truncated(M)),
          series_residual(ksum.truncated(M), logw.truncated(M))};
}

// The weight-zero recursion written with pre-Lie products, through fourth
// order in a:
//   a + ½a·a + ¼a·(a·a) + 1/12(a·a)·a
//   + 1/24 (a·((a·a)·a) + (a·(a·a))·a + (a·a)·(a·a)) + 1/8 a·(a·(a·a)).
template <RBInstance I>
std::vector<typename I::value_type> pre_lie_magnus_terms(const I& inst, const typename I::value_type& a) {
  auto p = [&](const auto& x, const auto& y) { return pre_lie(inst, x, y); };
  auto aa = p(a, a);
  auto t4 = ratio(1, 24) * (p(a, p(aa, a)) + p(p(a, aa), a) + p(aa, aa)) + ratio(1, 8) * p(a, p(a, aa));
  return {inst.zero(), a, ratio(1, 2) * aa, ratio(1, 4) * p(a, aa) + ratio(1, 12) * p(aa, a), t4};
}

}  // namespace hopfflow
