#include "hopfflow/carriers.hpp"

#include <cmath>
#include <sstream>

namespace hopfflow {

// ---- GeomSum ----

GeomSum GeomSum::term(const Rational& ratio, const Rational& scale) {
  if (ratio <= 0 || ratio > 1) throw DomainError("GeomFn ratio must lie in (0,1]");
  GeomSum g;
  g.add(ratio, scale);
  return g;
}

void GeomSum::add(const Rational& ratio, const Rational& scale) {
  if (scale == 0) return;
  auto [it, inserted] = terms_.try_emplace(ratio, scale);
  if (!inserted) {
    it->second += scale;
    if (it->second == 0) terms_.erase(it);
  }
}

double GeomSum::operator()(double x, double theta) const {
  double s = 0;
  for (const auto& [r, c] : terms_) s += c.get_d() * std::pow(r.get_d(), x / theta);
  return s;
}

GeomSum& GeomSum::operator+=(const GeomSum& o) {
  for (const auto& [r, c] : o.terms_) add(r, c);
  return *this;
}

GeomSum& GeomSum::operator-=(const GeomSum& o) {
  for (const auto& [r, c] : o.terms_) add(r, -c);
  return *this;
}

GeomSum operator*(const GeomSum& a, const GeomSum& b) {
  GeomSum g;
  for (const auto& [r1, c1] : a.terms_)
    for (const auto& [r2, c2] : b.terms_) g.add(r1 * r2, c1 * c2);
  return g;
}

GeomSum operator*(const Rational& c, const GeomSum& a) {
  GeomSum g;
  if (c == 0) return g;
  for (const auto& [r, x] : a.terms_) g.terms_.emplace(r, c * x);
  return g;
}

std::string GeomSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [r, c] : terms_) {
    os << (first ? "" : " + ") << c.get_str() << "*(" << r.get_str() << ")^(x/theta)";
    first = false;
  }
  return os.str();
}

double magnitude(const GeomSum& g) {
  double s = 0;
  for (const auto& [r, c] : g.terms()) s = std::max(s, std::abs(c.get_d()));
  return s;
}

// ---- QPoly ----

QPoly QPoly::monomial(unsigned degree, const Rational& c) {
  QPoly p;
  p.add(degree, c);
  return p;
}

void QPoly::add(unsigned m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational QPoly::coeff(unsigned m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational QPoly::operator()(const Rational& x) const {
  Rational s(0);
  for (const auto& [m, c] : terms_) s += c * pow(x, static_cast<long>(m));
  return s;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  QPoly p;
  for (const auto& [m1, c1] : a.terms_)
    for (const auto& [m2, c2] : b.terms_) p.add(m1 + m2, c1 * c2);
  return p;
}

QPoly operator*(const Rational& c, const QPoly& a) {
  QPoly p;
  if (c == 0) return p;
  for (const auto& [m, x] : a.terms_) p.terms_.emplace(m, c * x);
  return p;
}

std::string QPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    os << (first ? "" : " + ") << c.get_str() << "*x^" << m;
    first = false;
  }
  return os.str();
}

double magnitude(const QPoly& p) {
  double s = 0;
  for (const auto& [m, c] : p.terms()) s = std::max(s, std::abs(c.get_d()));
  return s;
}

// ---- SampledFn ----

SampledFn& SampledFn::operator+=(const SampledFn& o) {
  if (values.size() != o.values.size()) throw ShapeMismatch("SampledFn: grid size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

SampledFn& SampledFn::operator-=(const SampledFn& o) {
  if (values.size() != o.values.size()) throw ShapeMismatch("SampledFn: grid size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

SampledFn operator*(const SampledFn& a, const SampledFn& b) {
  if (a.values.size() != b.values.size()) throw ShapeMismatch("SampledFn: grid size mismatch");
  SampledFn r;
  r.values.reserve(a.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) r.values.push_back(a.values[i] * b.values[i]);
  return r;
}

SampledFn operator*(const Rational& c, const SampledFn& a) {
  SampledFn r = a;
  const double x = c.get_d();
  for (auto& v : r.values) v *= x;
  return r;
}

double SampledFn::max_abs() const {
  double s = 0;
  for (const auto& v : values)
    if (v.size()) s = std::max(s, v.cwiseAbs().maxCoeff());
  return s;
}

}  // namespace hopfflow
