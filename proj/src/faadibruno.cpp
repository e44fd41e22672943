#include "hopfflow/faadibruno.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include <fmt/format.h>

#include "hopfflow/qmatrix.hpp"

namespace hopfflow {

// ---- series ----

ExpSeries ExpSeries::identity(std::size_t N) {
  std::vector<Rational> f(N, 0);
  if (N > 0) f[0] = 1;
  return ExpSeries(std::move(f));
}

Rational ExpSeries::operator[](std::size_t n) const {
  if (n == 0) throw IndexError("ExpSeries: coefficients start at 1");
  return n <= f_.size() ? f_[n - 1] : Rational(0);
}

Rational partition_count(unsigned n, const std::vector<unsigned>& lambda) {
  Rational den = 1;
  for (unsigned i = 1; i < lambda.size(); ++i) den *= factorial(lambda[i]) * pow(factorial(i), lambda[i]);
  return factorial(n) / den;
}

Rational bell(unsigned n, unsigned k, const std::vector<Rational>& g) { return bell<Rational>(n, k, g, Rational(1)); }

ExpSeries compose_series(const ExpSeries& f, const ExpSeries& g, std::size_t N) {
  std::vector<Rational> gs(N);
  for (std::size_t i = 0; i < N; ++i) gs[i] = g[i + 1];
  std::vector<Rational> h(N, 0);
  for (unsigned n = 1; n <= N; ++n)
    for (unsigned k = 1; k <= n; ++k) h[n - 1] += f[k] * bell(n, k, gs);
  return ExpSeries(std::move(h));
}

// ---- polynomials ----

namespace {

FdbPoly::Monomial trimmed(FdbPoly::Monomial m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
  return m;
}

FdbPoly::Monomial mul(const FdbPoly::Monomial& a, const FdbPoly::Monomial& b) {
  FdbPoly::Monomial m(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) m[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) m[i] += b[i];
  return m;
}

std::string coeff_prefix(const Rational& c, bool first, bool unit_monomial) {
  Rational a = abs(c);
  std::string s = first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
  if (a != 1 || unit_monomial) s += a.get_str() + (unit_monomial ? "" : " ");
  return s;
}

}  // namespace

FdbPoly::FdbPoly(const Rational& c) {
  if (c != 0) terms_[{}] = c;
}

FdbPoly FdbPoly::generator(unsigned n) {
  if (n == 0) throw IndexError("generators start at a_1");
  if (n == 1) return FdbPoly(1);
  Monomial m(n - 1, 0);
  m[n - 2] = 1;
  return monomial(m);
}

FdbPoly FdbPoly::monomial(const Monomial& m, const Rational& c) {
  FdbPoly p;
  p.add(trimmed(m), c);
  return p;
}

void FdbPoly::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned monomial_degree(const FdbPoly::Monomial& m) {
  unsigned d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * static_cast<unsigned>(i + 1);
  return d;
}

unsigned FdbPoly::degree() const {
  if (terms_.empty()) return 0;
  unsigned d = monomial_degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (monomial_degree(m) != d) throw DomainError("polynomial is not homogeneous");
  return d;
}

FdbPoly& FdbPoly::operator+=(const FdbPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

FdbPoly& FdbPoly::operator-=(const FdbPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

FdbPoly operator*(const FdbPoly& a, const FdbPoly& b) {
  FdbPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add(mul(ma, mb), ca * cb);
  return r;
}

FdbPoly operator*(const Rational& c, FdbPoly a) {
  if (c == 0) return {};
  for (auto& [m, v] : a.terms_) v *= c;
  return a;
}

Rational FdbPoly::evaluate(const ExpSeries& f) const {
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < m.size(); ++i) t *= pow(f[i + 2], m[i]);
    acc += t;
  }
  return acc;
}

std::string monomial_str(const FdbPoly::Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += fmt::format("a{}", i + 2);
    if (m[i] > 1) s += fmt::format("^{}", m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string FdbPoly::str() const {
  if (terms_.empty()) return "0";
  // Highest generator first, so a3 precedes a2^2.
  std::vector<std::pair<Monomial, Rational>> order(terms_.begin(), terms_.end());
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() > y.first.size();
    return std::lexicographical_compare(y.first.rbegin(), y.first.rend(), x.first.rbegin(), x.first.rend());
  });
  std::string s;
  for (const auto& [m, c] : order) {
    bool unit = m.empty();
    s += coeff_prefix(c, s.empty(), unit);
    if (!unit) s += monomial_str(m);
  }
  return s;
}

std::vector<FdbPoly::Monomial> monomials_of_degree(unsigned d) {
  std::vector<FdbPoly::Monomial> out;
  if (d == 0) return {FdbPoly::Monomial{}};
  for (unsigned k = 1; k <= d; ++k)
    for (const auto& lambda : partitions_exact(d, k)) {
      // part j ↔ a_{j+1} ↔ index j − 1
      FdbPoly::Monomial m(lambda.begin() + 1, lambda.end());
      out.push_back(trimmed(m));
    }
  std::sort(out.begin(), out.end());
  return out;
}

// ---- tensors ----

FdbTensor FdbTensor::simple(const FdbPoly& left, const FdbPoly& right) {
  FdbTensor t;
  for (const auto& [ml, cl] : left.terms())
    for (const auto& [mr, cr] : right.terms()) t.add({ml, mr}, cl * cr);
  return t;
}

void FdbTensor::add(const Key& k, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

FdbTensor& FdbTensor::operator+=(const FdbTensor& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

FdbTensor& FdbTensor::operator-=(const FdbTensor& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

FdbTensor operator*(const FdbTensor& a, const FdbTensor& b) {
  FdbTensor r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      r.add({trimmed(mul(ka.first, kb.first)), trimmed(mul(ka.second, kb.second))}, ca * cb);
  return r;
}

Rational FdbTensor::pair(const ExpSeries& g, const ExpSeries& f) const {
  Rational acc = 0;
  for (const auto& [k, c] : terms_)
    acc += c * FdbPoly::monomial(k.first).evaluate(g) * FdbPoly::monomial(k.second).evaluate(f);
  return acc;
}

std::string FdbTensor::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    s += coeff_prefix(it->second, s.empty(), false);
    s += monomial_str(it->first.first) + "⊗" + monomial_str(it->first.second);
  }
  return s;
}

// ---- coproduct and antipode ----

namespace {

std::vector<FdbPoly> bell_args(unsigned n) {
  std::vector<FdbPoly> g;
  for (unsigned i = 1; i <= n; ++i) g.push_back(FdbPoly::generator(i));
  return g;
}

}  // namespace

FdbTensor fdb_coproduct(unsigned n) {
  if (n == 0) throw IndexError("generators start at a_1");
  const auto g = bell_args(n);
  FdbTensor t;
  for (unsigned k = 1; k <= n; ++k) t += FdbTensor::simple(bell(n, k, g, FdbPoly(1)), FdbPoly::generator(k));
  return t;
}

FdbTensor coproduct(const FdbPoly& p) {
  FdbTensor r;
  for (const auto& [m, c] : p.terms()) {
    FdbTensor t = FdbTensor::simple(FdbPoly(c), FdbPoly(1));
    for (std::size_t i = 0; i < m.size(); ++i) {
      FdbTensor d = fdb_coproduct(static_cast<unsigned>(i + 2));
      for (unsigned e = 0; e < m[i]; ++e) t = t * d;
    }
    r += t;
  }
  return r;
}

std::size_t coassociativity_defect(unsigned n) {
  using Triple = std::array<FdbPoly::Monomial, 3>;
  std::map<Triple, Rational> diff;
  auto add = [&](const Triple& k, const Rational& c) {
    Rational& v = diff[k];
    v += c;
    if (v == 0) diff.erase(k);
  };
  const FdbTensor delta = fdb_coproduct(n);
  for (const auto& [k, c] : delta.terms()) {
    const FdbTensor left = coproduct(FdbPoly::monomial(k.first)), right = coproduct(FdbPoly::monomial(k.second));
    for (const auto& [kl, cl] : left.terms()) add({kl.first, kl.second, k.second}, c * cl);
    for (const auto& [kr, cr] : right.terms()) add({k.first, kr.first, kr.second}, -c * cr);
  }
  return diff.size();
}

Rational duality_defect(unsigned n, const ExpSeries& f, const ExpSeries& g) {
  return fdb_coproduct(n).pair(g, f) - compose_series(f, g, n)[n];
}

FdbPoly antipode(unsigned n) {
  if (n == 0) throw IndexError("generators start at a_1");
  if (n == 1) return FdbPoly(1);
  const auto g = bell_args(n);
  std::vector<FdbPoly> S(n + 1);
  for (unsigned q = 2; q <= n; ++q) {
    S[q] = Rational(-1) * FdbPoly::generator(q);
    for (unsigned k = 2; k < q; ++k) S[q] -= bell(q, k, g, FdbPoly(1)) * S[k];
  }
  return S[n];
}

FdbPoly antipode(const FdbPoly& p) {
  FdbPoly r;
  for (const auto& [m, c] : p.terms()) {
    FdbPoly t(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (unsigned e = 0; e < m[i]; ++e) t = t * antipode(static_cast<unsigned>(i + 2));
    r += t;
  }
  return r;
}

// ---- graded dual ----

Rational DualElement::operator()(const FdbPoly& p) const {
  Rational acc = 0;
  for (const auto& [m, c] : p.terms())
    if (auto it = values.find(m); it != values.end()) acc += c * it->second;
  return acc;
}

DualElement dual_generator(unsigned n) {
  if (n < 2) throw IndexError("dual generators start at a'_2");
  DualElement e;
  e.degree = n - 1;
  e.values[FdbPoly::generator(n).terms().begin()->first] = 1;
  return e;
}

DualElement convolve(const DualElement& phi, const DualElement& psi) {
  DualElement r;
  r.degree = phi.degree + psi.degree;
  for (const auto& m : monomials_of_degree(r.degree)) {
    Rational v = 0;
    const FdbTensor delta = coproduct(FdbPoly::monomial(m));
    for (const auto& [k, c] : delta.terms()) {
      auto l = phi.values.find(k.first);
      if (l == phi.values.end()) continue;
      auto q = psi.values.find(k.second);
      if (q == psi.values.end()) continue;
      v += c * l->second * q->second;
    }
    if (v != 0) r.values[m] = v;
  }
  return r;
}

DualElement operator-(const DualElement& a, const DualElement& b) {
  if (a.degree != b.degree && !a.values.empty() && !b.values.empty())
    throw DomainError("dual elements of different degree");
  DualElement r = a;
  if (r.values.empty()) r.degree = b.degree;
  for (const auto& [m, c] : b.values) {
    Rational& v = r.values[m];
    v -= c;
    if (v == 0) r.values.erase(m);
  }
  return r;
}

DualElement operator*(const Rational& c, const DualElement& a) {
  DualElement r{a.degree, {}};
  if (c == 0) return r;
  for (const auto& [m, v] : a.values) r.values[m] = c * v;
  return r;
}

DualElement dual_b(unsigned n) { return factorial(n + 1) * dual_generator(n + 1); }

Rational dual_bracket(unsigned n, unsigned m) {
  if (n < 1 || m < 1) throw IndexError("dual_bracket: indices start at 1");
  DualElement bn = dual_b(n), bm = dual_b(m);
  DualElement c = convolve(bn, bm) - convolve(bm, bn);
  DualElement target = dual_b(n + m);
  const auto& key = target.values.begin()->first;
  Rational coeff = 0;
  if (auto it = c.values.find(key); it != c.values.end()) coeff = it->second / target.values.begin()->second;
  if (!(c - coeff * target).values.empty())
    throw DomainError(fmt::format("[b'_{}, b'_{}] leaves the span of b'_{}", n, m, n + m));
  return coeff;
}

std::vector<FdbPoly> primitive_space(unsigned d) {
  if (d < 1) throw IndexError("primitive_space: degree starts at 1");
  const auto basis = monomials_of_degree(d);
  std::vector<FdbTensor> images;
  std::map<FdbTensor::Key, std::size_t> rows;
  for (const auto& m : basis) {
    FdbPoly p = FdbPoly::monomial(m);
    FdbTensor t = coproduct(p);
    t -= FdbTensor::simple(p, FdbPoly(1));
    t -= FdbTensor::simple(FdbPoly(1), p);
    for (const auto& [k, c] : t.terms()) rows.try_emplace(k, rows.size());
    images.push_back(std::move(t));
  }
  QMatrix A(std::max<std::size_t>(rows.size(), 1), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (const auto& [k, c] : images[j].terms()) A(rows.at(k), j) = c;
  std::vector<FdbPoly> out;
  const auto top = FdbPoly::generator(d + 1).terms().begin()->first;
  for (const auto& v : null_space(A)) {
    FdbPoly p;
    for (std::size_t j = 0; j < basis.size(); ++j) p += FdbPoly::monomial(basis[j], v[j]);
    if (auto it = p.terms().find(top); it != p.terms().end()) p = (1 / it->second) * p;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace hopfflow
