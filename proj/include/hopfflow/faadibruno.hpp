#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hopfflow/combinatorics.hpp"
#include "hopfflow/errors.hpp"
#include "hopfflow/rational.hpp"

namespace hopfflow {

// f(t) = Σ_{n≥1} f_n tⁿ/n!, stored f_1..f_N.
class ExpSeries {
 public:
  ExpSeries() = default;
  explicit ExpSeries(std::vector<Rational> coeffs) : f_(std::move(coeffs)) {}
  static ExpSeries identity(std::size_t N);

  std::size_t order() const { return f_.size(); }
  // f_n, zero beyond the truncation.
  Rational operator[](std::size_t n) const;
  const std::vector<Rational>& coeffs() const { return f_; }
  friend bool operator==(const ExpSeries&, const ExpSeries&) = default;

 private:
  std::vector<Rational> f_;
};

// n!/(Π λ_i! (i!)^{λ_i}) for a multiplicity vector λ (index i = part size).
Rational partition_count(unsigned n, const std::vector<unsigned>& lambda);

// B_{n,k}(g_1..g_{n+1−k}); g[0] is g_1. Throws IndexError unless 1 ≤ k ≤ n
// and enough arguments are given.
template <class T>
T bell(unsigned n, unsigned k, const std::vector<T>& g, const T& one) {
  if (k < 1 || k > n) throw IndexError("bell: need 1 <= k <= n");
  if (g.size() < n + 1 - k) throw IndexError("bell: too few arguments");
  T acc = one - one;
  for (const auto& lambda : partitions_exact(n, k)) {
    T term = one;
    for (unsigned i = 1; i <= n + 1 - k; ++i)
      for (unsigned e = 0; e < lambda[i]; ++e) term = term * g[i - 1];
    acc = acc + partition_count(n, lambda) * term;
  }
  return acc;
}

Rational bell(unsigned n, unsigned k, const std::vector<Rational>& g);

// h = f∘g through order N, h_n = Σ_k f_k B_{n,k}(g).
ExpSeries compose_series(const ExpSeries& f, const ExpSeries& g, std::size_t N);

// Polynomial in a_2, a_3, … (a_1 = 1) with rational coefficients.
// Monomial key: exponent of a_{i+2} at index i, no trailing zeros.
class FdbPoly {
 public:
  using Monomial = std::vector<unsigned>;

  FdbPoly() = default;
  explicit FdbPoly(const Rational& c);
  // a_n; a_1 is the unit.
  static FdbPoly generator(unsigned n);
  static FdbPoly monomial(const Monomial& m, const Rational& c = 1);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // |a_n| = n − 1; throws DomainError if not homogeneous.
  unsigned degree() const;

  FdbPoly& operator+=(const FdbPoly& o);
  FdbPoly& operator-=(const FdbPoly& o);
  friend FdbPoly operator+(FdbPoly a, const FdbPoly& b) { return a += b; }
  friend FdbPoly operator-(FdbPoly a, const FdbPoly& b) { return a -= b; }
  friend FdbPoly operator*(const FdbPoly& a, const FdbPoly& b);
  friend FdbPoly operator*(const Rational& c, FdbPoly a);
  friend bool operator==(const FdbPoly&, const FdbPoly&) = default;

  // a_n ↦ f_n
  Rational evaluate(const ExpSeries& f) const;
  // e.g. "a3 - 3/2 a2^2"
  std::string str() const;

 private:
  void add(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

unsigned monomial_degree(const FdbPoly::Monomial& m);
std::string monomial_str(const FdbPoly::Monomial& m);
// All monomials of degree d, sorted.
std::vector<FdbPoly::Monomial> monomials_of_degree(unsigned d);

// Σ c · left ⊗ right
class FdbTensor {
 public:
  using Key = std::pair<FdbPoly::Monomial, FdbPoly::Monomial>;

  static FdbTensor simple(const FdbPoly& left, const FdbPoly& right);
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Key& k, const Rational& c);

  FdbTensor& operator+=(const FdbTensor& o);
  FdbTensor& operator-=(const FdbTensor& o);
  friend FdbTensor operator*(const FdbTensor& a, const FdbTensor& b);
  friend bool operator==(const FdbTensor&, const FdbTensor&) = default;

  // ⟨P⊗Q, g⊗f⟩ = P(g) Q(f)
  Rational pair(const ExpSeries& g, const ExpSeries& f) const;
  std::string str() const;

 private:
  std::map<Key, Rational> terms_;
};

// Δa_n = Σ_k B_{n,k}(1, a_2, …) ⊗ a_k, n ≥ 1.
FdbTensor fdb_coproduct(unsigned n);
// Δ extended multiplicatively.
FdbTensor coproduct(const FdbPoly& p);
// Number of terms in (Δ⊗id)Δa_n − (id⊗Δ)Δa_n.
std::size_t coassociativity_defect(unsigned n);
// ⟨Δa_n, g⊗f⟩ − a_n(f∘g)
Rational duality_defect(unsigned n, const ExpSeries& f, const ExpSeries& g);

// Antipode from S(a_n) = −a_n − Σ_{1<k<n} B_{n,k}(1, a_2, …) S(a_k).
FdbPoly antipode(unsigned n);
FdbPoly antipode(const FdbPoly& p);

// Element of the graded dual: values on the monomials of one degree.
struct DualElement {
  unsigned degree = 0;
  std::map<FdbPoly::Monomial, Rational> values;

  Rational operator()(const FdbPoly& p) const;
  friend bool operator==(const DualElement&, const DualElement&) = default;
};

// a'_n = ∂/∂a_n at 0
DualElement dual_generator(unsigned n);
// ⟨φψ, P⟩ = ⟨φ⊗ψ, ΔP⟩
DualElement convolve(const DualElement& phi, const DualElement& psi);
DualElement operator-(const DualElement& a, const DualElement& b);
DualElement operator*(const Rational& c, const DualElement& a);
// b'_n = (n+1)! a'_{n+1}
DualElement dual_b(unsigned n);

// [b'_n, b'_m] from convolution; returns c with [b'_n, b'_m] = c b'_{n+m}.
// Throws DomainError if the commutator leaves the span of b'_{n+m}.
Rational dual_bracket(unsigned n, unsigned m);

// Basis of the primitives of degree d, from the exact null space of
// Δ − (·⊗1 + 1⊗·) on monomials; each vector scaled so a_{d+1} has coefficient 1
// when present.
std::vector<FdbPoly> primitive_space(unsigned d);

}  // namespace hopfflow
