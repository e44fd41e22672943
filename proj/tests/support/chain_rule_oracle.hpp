#pragma once

#include <map>
#include <vector>

#include "hopfflow/rational.hpp"

namespace oracle {

using hopfflow::Rational;

// Commutative polynomials in f_1..f_8 (variables 0..7) and g_1..g_8 (8..15).
struct Sym {
  std::map<std::vector<unsigned>, Rational> t;

  static Sym var(unsigned i) {
    std::vector<unsigned> m(16, 0);
    m[i] = 1;
    return Sym{{{m, 1}}};
  }
  static Sym constant(const Rational& c) { return c == 0 ? Sym{} : Sym{{{std::vector<unsigned>(16, 0), c}}}; }

  friend Sym operator+(Sym a, const Sym& b) {
    for (const auto& [m, c] : b.t) {
      a.t[m] += c;
      if (a.t[m] == 0) a.t.erase(m);
    }
    return a;
  }
  friend Sym operator-(const Sym& a, const Sym& b) { return a + Rational(-1) * b; }
  friend Sym operator*(const Sym& a, const Sym& b) {
    Sym r;
    for (const auto& [ma, ca] : a.t)
      for (const auto& [mb, cb] : b.t) {
        auto m = ma;
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        r = r + Sym{{{m, ca * cb}}};
      }
    return r;
  }
  friend Sym operator*(const Rational& c, Sym a) {
    if (c == 0) return {};
    for (auto& [m, v] : a.t) v *= c;
    return a;
  }
  friend bool operator==(const Sym&, const Sym&) = default;
};

// n!·[tⁿ] of Σ_k f_k/k! g(t)^k by truncated power-series arithmetic.
inline std::vector<Sym> chain_rule_oracle(unsigned N) {
  std::vector<Sym> g(N + 1), pw(N + 1), h(N + 1);
  for (unsigned l = 1; l <= N; ++l) g[l] = (1 / hopfflow::factorial(l)) * Sym::var(8 + l - 1);
  pw[0] = Sym::constant(1);
  for (unsigned k = 1; k <= N; ++k) {
    std::vector<Sym> next(N + 1);
    for (unsigned i = 0; i <= N; ++i)
      for (unsigned j = 1; i + j <= N; ++j) next[i + j] = next[i + j] + pw[i] * g[j];
    pw = next;
    for (unsigned n = 1; n <= N; ++n) h[n] = h[n] + (1 / hopfflow::factorial(k)) * Sym::var(k - 1) * pw[n];
  }
  for (unsigned n = 1; n <= N; ++n) h[n] = hopfflow::factorial(n) * h[n];
  return h;
}

}  // namespace oracle
