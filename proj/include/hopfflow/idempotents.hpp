#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "hopfflow/freetensor.hpp"
#include "hopfflow/qmatrix.hpp"

namespace hopfflow {

enum class HopfSide {
  ConcatUnshuffle,  // T(V): concatenation, unshuffle coproduct
  ShuffleDeconcat,  // T*(V): shuffle, deconcatenation
};

// Degree-truncated endomorphism of the free algebra on `alphabet` letters.
// Block d is the matrix on the degree-d word basis; column j is the image of
// the j-th word in degree-lex order.
class GradedEndo {
 public:
  GradedEndo(std::size_t alphabet, std::size_t N, HopfSide side);

  static GradedEndo from_map(std::size_t alphabet, std::size_t N, HopfSide side,
                             const std::function<FreePoly(const Word&)>& f);
  static GradedEndo identity(std::size_t alphabet, std::size_t N, HopfSide side);
  // uη: projection onto the degree-0 part.
  static GradedEndo unit_counit(std::size_t alphabet, std::size_t N, HopfSide side);
  static GradedEndo antipode(std::size_t alphabet, std::size_t N, HopfSide side);
  // Y(w) = |w| w.
  static GradedEndo grading(std::size_t alphabet, std::size_t N, HopfSide side);

  std::size_t alphabet() const { return alphabet_; }
  std::size_t max_degree() const { return N_; }
  HopfSide side() const { return side_; }
  const QMatrix& block(std::size_t d) const { return blocks_.at(d); }
  QMatrix& block(std::size_t d) { return blocks_.at(d); }

  std::size_t index_of(const Word& w) const;
  const std::vector<Word>& basis(std::size_t d) const;

  FreePoly apply(const Word& w) const;
  FreePoly apply(const FreePoly& p) const;

  GradedEndo& operator+=(const GradedEndo& o);
  GradedEndo& operator-=(const GradedEndo& o);
  GradedEndo& operator*=(const Rational& c);
  friend GradedEndo operator+(GradedEndo a, const GradedEndo& b) { return a += b; }
  friend GradedEndo operator-(GradedEndo a, const GradedEndo& b) { return a -= b; }
  friend GradedEndo operator*(const Rational& c, GradedEndo a) { return a *= c; }
  // Composition f ∘ g.
  friend GradedEndo operator*(const GradedEndo& f, const GradedEndo& g);
  friend bool operator==(const GradedEndo& a, const GradedEndo& b);

  bool is_zero() const;

 private:
  void check_compatible(const GradedEndo& o) const;
  std::size_t alphabet_, N_;
  HopfSide side_;
  std::vector<QMatrix> blocks_;
};

// f*g = m(f⊗g)Δ on the endomorphisms' Hopf side.
GradedEndo convolve(const GradedEndo& f, const GradedEndo& g);
GradedEndo convolution_power(const GradedEndo& f, unsigned k);

// π_n = (log* id)^{*n}/n!, π_0 = uη.
GradedEndo eulerian(std::size_t n, std::size_t N, std::size_t alphabet = 2,
                    HopfSide side = HopfSide::ConcatUnshuffle);
// id^{*l}, l >= 0.
GradedEndo adams(unsigned l, std::size_t N, std::size_t alphabet = 2, HopfSide side = HopfSide::ConcatUnshuffle);

// π_1 applied to a single word on the concatenation side, without building
// matrices: sum over k of (-1)^{k-1}/k times the concatenations of the
// ordered set partitions of the positions into k blocks.
FreePoly pi1_word(const Word& w);

class Permutation {
 public:
  // Images σ(1..n), one-based.
  explicit Permutation(std::vector<unsigned> images);
  static Permutation identity(unsigned n);
  static std::vector<Permutation> all(unsigned n);

  unsigned size() const { return static_cast<unsigned>(images_.size()); }
  unsigned operator()(unsigned i) const { return images_.at(i - 1); }
  const std::vector<unsigned>& images() const { return images_; }
  unsigned descents() const { return descents_; }
  Permutation inverse() const;
  // Word x_{σ(1)}…x_{σ(n)} with letters 0..n-1.
  Word word() const;

  bool operator==(const Permutation& o) const { return images_ == o.images_; }
  auto operator<=>(const Permutation& o) const { return images_ <=> o.images_; }

 private:
  std::vector<unsigned> images_;
  unsigned descents_ = 0;
};

// σ -> (-1)^{d(σ)} / (n binom(n-1, d(σ))).
std::map<Permutation, Rational> descent_pi1(unsigned n);
// The descent formula applied to x_1…x_n as a FreePoly.
FreePoly descent_pi1_word(unsigned n);

}  // namespace hopfflow
