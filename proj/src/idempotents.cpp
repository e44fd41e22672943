#include "hopfflow/idempotents.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace hopfflow {

namespace {

const std::vector<Word>& cached_basis(std::size_t alphabet, std::size_t d) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<Word>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(alphabet, d);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, words_of_degree(alphabet, d)).first;
  return it->second;
}

}  // namespace

GradedEndo::GradedEndo(std::size_t alphabet, std::size_t N, HopfSide side)
    : alphabet_(alphabet), N_(N), side_(side) {
  if (alphabet == 0) throw std::invalid_argument("GradedEndo: empty alphabet");
  for (std::size_t d = 0; d <= N; ++d) {
    std::size_t n = basis(d).size();
    blocks_.emplace_back(n, n);
  }
}

const std::vector<Word>& GradedEndo::basis(std::size_t d) const { return cached_basis(alphabet_, d); }

std::size_t GradedEndo::index_of(const Word& w) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= alphabet_) throw std::out_of_range("GradedEndo: letter outside alphabet");
    idx = idx * alphabet_ + w[i];
  }
  return idx;
}

GradedEndo GradedEndo::from_map(std::size_t alphabet, std::size_t N, HopfSide side,
                                const std::function<FreePoly(const Word&)>& f) {
  GradedEndo e(alphabet, N, side);
  for (std::size_t d = 0; d <= N; ++d) {
    const auto& b = e.basis(d);
    for (std::size_t j = 0; j < b.size(); ++j) {
      FreePoly img = f(b[j]);
      for (const auto& [w, c] : img.terms()) {
        if (w.size() != d) throw std::invalid_argument("GradedEndo::from_map: map does not preserve degree");
        e.blocks_[d](e.index_of(w), j) = c;
      }
    }
  }
  return e;
}

GradedEndo GradedEndo::identity(std::size_t alphabet, std::size_t N, HopfSide side) {
  GradedEndo e(alphabet, N, side);
  for (auto& b : e.blocks_) b = QMatrix::identity(b.rows());
  return e;
}

GradedEndo GradedEndo::unit_counit(std::size_t alphabet, std::size_t N, HopfSide side) {
  GradedEndo e(alphabet, N, side);
  e.blocks_[0](0, 0) = 1;
  return e;
}

GradedEndo GradedEndo::antipode(std::size_t alphabet, std::size_t N, HopfSide side) {
  return from_map(alphabet, N, side, [](const Word& w) { return hopfflow::antipode(FreePoly(w)); });
}

GradedEndo GradedEndo::grading(std::size_t alphabet, std::size_t N, HopfSide side) {
  GradedEndo e(alphabet, N, side);
  for (std::size_t d = 0; d <= N; ++d) e.blocks_[d] = Rational(static_cast<long>(d)) * QMatrix::identity(e.blocks_[d].rows());
  return e;
}

FreePoly GradedEndo::apply(const Word& w) const {
  if (w.size() > N_) throw DegreeOutOfRange("GradedEndo::apply: word above truncation degree");
  const QMatrix& m = blocks_[w.size()];
  const auto& b = basis(w.size());
  std::size_t j = index_of(w);
  FreePoly r;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (m(i, j) != 0) r.add_term(b[i], m(i, j));
  return r;
}

FreePoly GradedEndo::apply(const FreePoly& p) const {
  FreePoly r;
  for (const auto& [w, c] : p.terms()) r += c * apply(w);
  return r;
}

void GradedEndo::check_compatible(const GradedEndo& o) const {
  if (side_ != o.side_) throw SideMismatch("GradedEndo: different Hopf sides");
  if (alphabet_ != o.alphabet_ || N_ != o.N_) throw std::invalid_argument("GradedEndo: different alphabet or degree");
}

GradedEndo& GradedEndo::operator+=(const GradedEndo& o) {
  check_compatible(o);
  for (std::size_t d = 0; d <= N_; ++d) blocks_[d] += o.blocks_[d];
  return *this;
}

GradedEndo& GradedEndo::operator-=(const GradedEndo& o) {
  check_compatible(o);
  for (std::size_t d = 0; d <= N_; ++d) blocks_[d] -= o.blocks_[d];
  return *this;
}

GradedEndo& GradedEndo::operator*=(const Rational& c) {
  for (auto& b : blocks_) b *= c;
  return *this;
}

GradedEndo operator*(const GradedEndo& f, const GradedEndo& g) {
  f.check_compatible(g);
  GradedEndo r(f.alphabet_, f.N_, f.side_);
  for (std::size_t d = 0; d <= f.N_; ++d) r.blocks_[d] = f.blocks_[d] * g.blocks_[d];
  return r;
}

bool operator==(const GradedEndo& a, const GradedEndo& b) {
  return a.side_ == b.side_ && a.alphabet_ == b.alphabet_ && a.N_ == b.N_ && a.blocks_ == b.blocks_;
}

bool GradedEndo::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const QMatrix& m) { return m.is_zero(); });
}

GradedEndo convolve(const GradedEndo& f, const GradedEndo& g) {
  if (f.side() != g.side()) throw SideMismatch("convolve: endomorphisms live on different Hopf sides");
  if (f.alphabet() != g.alphabet() || f.max_degree() != g.max_degree())
    throw std::invalid_argument("convolve: different alphabet or degree");
  const bool tensor = f.side() == HopfSide::ConcatUnshuffle;
  return GradedEndo::from_map(f.alphabet(), f.max_degree(), f.side(), [&](const Word& w) {
    TensorPoly d = tensor ? unshuffle(FreePoly(w)) : deconcat(FreePoly(w));
    FreePoly out;
    for (const auto& [k, c] : d.terms()) {
      FreePoly a = f.apply(k.first);
      if (a.is_zero()) continue;
      FreePoly b = g.apply(k.second);
      if (b.is_zero()) continue;
      out += c * (tensor ? concat_mul(a, b) : shuffle_mul(a, b));
    }
    return out;
  });
}

GradedEndo convolution_power(const GradedEndo& f, unsigned k) {
  GradedEndo r = GradedEndo::unit_counit(f.alphabet(), f.max_degree(), f.side());
  for (unsigned i = 0; i < k; ++i) r = convolve(r, f);
  return r;
}

GradedEndo eulerian(std::size_t n, std::size_t N, std::size_t alphabet, HopfSide side) {
  if (n > N) throw DegreeOutOfRange("eulerian: index exceeds truncation degree");
  GradedEndo ue = GradedEndo::unit_counit(alphabet, N, side);
  if (n == 0) return ue;
  GradedEndo j = GradedEndo::identity(alphabet, N, side) - ue;
  // log*(id) = sum_k (-1)^{k-1}/k (id - uη)^{*k}; terms with k > d vanish on degree d.
  GradedEndo pi1(alphabet, N, side);
  GradedEndo power = j;
  for (std::size_t k = 1; k <= N; ++k) {
    if (k > 1) power = convolve(power, j);
    pi1 += Rational(k % 2 ? 1 : -1, static_cast<long>(k)) * power;
  }
  GradedEndo r = convolution_power(pi1, static_cast<unsigned>(n));
  return (1 / factorial(static_cast<unsigned>(n))) * r;
}

GradedEndo adams(unsigned l, std::size_t N, std::size_t alphabet, HopfSide side) {
  return convolution_power(GradedEndo::identity(alphabet, N, side), l);
}

FreePoly pi1_word(const Word& w) {
  const std::size_t n = w.size();
  FreePoly out;
  if (n == 0) return out;
  std::vector<unsigned> block(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Rational c(k % 2 ? 1 : -1, static_cast<long>(k));
    std::fill(block.begin(), block.end(), 0u);
    while (true) {
      std::vector<unsigned> used(k, 0);
      for (auto b : block) used[b] = 1;
      if (std::accumulate(used.begin(), used.end(), 0u) == k) {
        std::vector<Letter> letters;
        letters.reserve(n);
        for (unsigned b = 0; b < k; ++b)
          for (std::size_t i = 0; i < n; ++i)
            if (block[i] == b) letters.push_back(w[i]);
        out.add_term(Word(std::move(letters)), c);
      }
      std::size_t i = 0;
      while (i < n && ++block[i] == k) block[i++] = 0;
      if (i == n) break;
    }
  }
  return out;
}

Permutation::Permutation(std::vector<unsigned> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (auto v : images_) {
    if (v < 1 || v > images_.size() || seen[v]) throw std::invalid_argument("Permutation: not a bijection");
    seen[v] = true;
  }
  for (std::size_t i = 0; i + 1 < images_.size(); ++i)
    if (images_[i] > images_[i + 1]) ++descents_;
}

Permutation Permutation::identity(unsigned n) {
  std::vector<unsigned> v(n);
  std::iota(v.begin(), v.end(), 1u);
  return Permutation(v);
}

std::vector<Permutation> Permutation::all(unsigned n) {
  std::vector<unsigned> v(n);
  std::iota(v.begin(), v.end(), 1u);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<unsigned> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i] - 1] = static_cast<unsigned>(i + 1);
  return Permutation(inv);
}

Word Permutation::word() const {
  std::vector<Letter> l;
  for (auto v : images_) l.push_back(v - 1);
  return Word(l);
}

std::map<Permutation, Rational> descent_pi1(unsigned n) {
  if (n == 0) throw std::invalid_argument("descent_pi1: n must be positive");
  std::map<Permutation, Rational> out;
  for (auto& s : Permutation::all(n)) {
    unsigned d = s.descents();
    Rational c = Rational(d % 2 ? -1 : 1) / (Rational(n) * binomial(n - 1, d));
    out.emplace(s, c);
  }
  return out;
}

FreePoly descent_pi1_word(unsigned n) {
  FreePoly out;
  for (const auto& [s, c] : descent_pi1(n)) out.add_term(s.word(), c);
  return out;
}

}  // namespace hopfflow
