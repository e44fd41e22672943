#include "hopfflow/rotabaxter.hpp"

namespace hopfflow {

QMatrix random_qmatrix(std::size_t k, Rng& rng, int range, int den) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> d(1, den);
  QMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      m(i, j) = ratio(num(rng), d(rng));
    }
  return m;
}

// ---- Riemann ----

RiemannInstance::RiemannInstance(double T, std::size_t intervals, std::size_t k) : k_(k) {
  if (intervals < 3 || !(T > 0)) throw EmptyGrid("RiemannInstance: need T > 0 and at least 3 intervals");
  if (k == 0) throw ShapeMismatch("RiemannInstance: matrix size must be positive");
  h_ = T / static_cast<double>(intervals);
  grid_.resize(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) grid_[i] = h_ * static_cast<double>(i);
}

SampledFn RiemannInstance::sample(const std::function<Eigen::MatrixXd(double)>& f) const {
  SampledFn s;
  s.values.reserve(grid_.size());
  for (double x : grid_) {
    s.values.push_back(f(x));
    if (s.values.back().rows() != static_cast<long>(k_) || s.values.back().cols() != static_cast<long>(k_))
      throw ShapeMismatch("RiemannInstance::sample: wrong matrix size");
  }
  return s;
}

SampledFn RiemannInstance::sample_scalar(const std::function<double(double)>& f) const {
  return sample([&](double x) { return Eigen::MatrixXd::Constant(static_cast<long>(k_), static_cast<long>(k_), f(x)); });
}

SampledFn RiemannInstance::apply(const SampledFn& f) const {
  const std::size_t n = grid_.size() - 1;
  if (f.values.size() != grid_.size()) throw ShapeMismatch("RiemannInstance: sample count does not match grid");
  const auto& v = f.values;
  SampledFn out;
  out.values.resize(n + 1);
  out.values[0] = Eigen::MatrixXd::Zero(static_cast<long>(k_), static_cast<long>(k_));
  for (std::size_t i = 2; i <= n; i += 2) out.values[i] = out.values[i - 2] + (h_ / 3.0) * (v[i - 2] + 4.0 * v[i - 1] + v[i]);
  for (std::size_t i = 1; i <= n; i += 2) {
    const std::size_t b = i - 1;
    if (b + 3 <= n)
      out.values[i] = out.values[b] + (h_ / 24.0) * (9.0 * v[b] + 19.0 * v[b + 1] - 5.0 * v[b + 2] + v[b + 3]);
    else
      out.values[i] = out.values[b] + (h_ / 24.0) * (v[b - 2] - 5.0 * v[b - 1] + 19.0 * v[b] + 9.0 * v[b + 1]);
  }
  return out;
}

SampledFn RiemannInstance::zero() const {
  SampledFn s;
  s.values.assign(grid_.size(), Eigen::MatrixXd::Zero(static_cast<long>(k_), static_cast<long>(k_)));
  return s;
}

SampledFn RiemannInstance::one() const {
  SampledFn s;
  s.values.assign(grid_.size(), Eigen::MatrixXd::Identity(static_cast<long>(k_), static_cast<long>(k_)));
  return s;
}

SampledFn RiemannInstance::random(Rng& rng) const {
  std::uniform_int_distribution<int> c(-8, 8);
  const long k = static_cast<long>(k_);
  std::vector<Eigen::MatrixXd> coeff(3, Eigen::MatrixXd(k, k));
  for (auto& m : coeff)
    for (long i = 0; i < k * k; ++i) m(i / k, i % k) = c(rng) / 8.0;
  return sample([&](double x) -> Eigen::MatrixXd { return coeff[0] + x * coeff[1] + x * x * coeff[2]; });
}

// ---- Summation ----

SummationInstance::SummationInstance(const Rational& step) : step_(step) {
  if (step <= 0) throw DomainError("SummationInstance: step must be positive");
}

GeomSum SummationInstance::apply(const GeomSum& f) const {
  GeomSum out;
  for (const auto& [r, c] : f.terms()) {
    if (r >= 1) throw DomainError("summation operator: ratio must lie in (0,1)");
    out += GeomSum::term(r, c * step_ * r / (1 - r));
  }
  return out;
}

GeomSum SummationInstance::delta(const GeomSum& f) const {
  GeomSum out;
  for (const auto& [r, c] : f.terms()) out += GeomSum::term(r, c * (1 / r - 1) / step_);
  return out;
}

GeomSum SummationInstance::random(Rng& rng) const {
  static const Rational ratios[] = {Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4),
                                    Rational(3, 4), Rational(1, 5), Rational(2, 5), Rational(4, 5)};
  std::uniform_int_distribution<int> pick(0, 7), count(1, 3), scale(-6, 6);
  GeomSum g;
  int n = count(rng);
  for (int i = 0; i < n; ++i) g += GeomSum::term(ratios[pick(rng)], ratio(scale(rng), 2));
  return g;
}

// ---- Jackson ----

JacksonInstance::JacksonInstance(const Rational& q, Mode mode) : q_(q), mode_(mode) {
  if (q <= 0 || q >= 1) throw DomainError("JacksonInstance: q must lie in (0,1)");
}

Rational JacksonInstance::multiplier(unsigned m) const {
  if (m == 0) throw DomainError("Jackson operator: constant term is outside the carrier");
  Rational qm = pow(q_, static_cast<long>(m));
  switch (mode_) {
    case Mode::Pq:
      return qm / (1 - qm);
    case Mode::PqHat:
      return 1 / (1 - qm);
    case Mode::JBar:
      return (1 - q_) / (1 - qm);
  }
  return 0;
}

QPoly JacksonInstance::apply(const QPoly& f) const {
  QPoly out;
  for (const auto& [m, c] : f.terms()) out += QPoly::monomial(m, c * multiplier(m));
  return out;
}

QPoly JacksonInstance::delta(const QPoly& f) const {
  QPoly out;
  for (const auto& [m, c] : f.terms()) out += QPoly::monomial(m, c * (1 - pow(q_, static_cast<long>(m))) / (1 - q_));
  return out;
}

Rational JacksonInstance::weight() const {
  switch (mode_) {
    case Mode::Pq:
      return -1;
    case Mode::PqHat:
      return 1;
    case Mode::JBar:
      return 1 - q_;
  }
  return 0;
}

QPoly JacksonInstance::random(Rng& rng) const {
  std::uniform_int_distribution<int> deg(1, 3), c(-5, 5);
  QPoly p;
  int top = deg(rng);
  for (int m = 1; m <= top; ++m) p += QPoly::monomial(static_cast<unsigned>(m), ratio(c(rng), 3));
  if (p.is_zero()) p = QPoly::monomial(1);
  return p;
}

// ---- Projection / triangular ----

ProjectionInstance::ProjectionInstance(std::size_t k, const Rational& theta) : k_(k), theta_(theta) {
  if (k == 0) throw ShapeMismatch("ProjectionInstance: size must be positive");
}

MatPair ProjectionInstance::random(Rng& rng) const { return {random_qmatrix(k_, rng), random_qmatrix(k_, rng)}; }

TriangularInstance::TriangularInstance(std::size_t k, const Rational& theta) : k_(k), theta_(theta) {
  if (k == 0) throw ShapeMismatch("TriangularInstance: size must be positive");
}

QMatrix TriangularInstance::apply(const QMatrix& x) const {
  QMatrix r(k_, k_);
  for (std::size_t i = 0; i < k_; ++i)
    for (std::size_t j = i; j < k_; ++j) r(i, j) = theta_ * x(i, j);
  return r;
}

QMatrix TriangularInstance::random(Rng& rng) const { return random_qmatrix(k_, rng); }

// ---- Integration series ----

IntegrationSeries::value_type IntegrationSeries::apply(const value_type& x) const {
  value_type r(x.order(), QMatrix(k_, k_));
  for (std::size_t n = 0; n + 1 <= x.order(); ++n)
    if (!x[n].is_zero()) r[n + 1] = Rational(1, static_cast<long>(n + 1)) * x[n];
  return r;
}

IntegrationSeries::value_type IntegrationSeries::random(Rng& rng) const {
  value_type r = zero();
  for (std::size_t n = 0; n <= std::min<std::size_t>(2, N_); ++n) r[n] = random_qmatrix(k_, rng);
  return r;
}

}  // namespace hopfflow
