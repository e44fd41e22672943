#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hopfflow/errors.hpp"
#include "hopfflow/rational.hpp"

namespace hopfflow {

using Letter = std::uint32_t;

class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> l) : letters_(l) {}
  explicit Word(std::vector<Letter> l) : letters_(std::move(l)) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }

  Word sub(std::size_t pos, std::size_t len = std::string::npos) const;
  Word reversed() const;
  Word operator+(const Word& o) const;

  bool operator==(const Word&) const = default;
  // Degree first, then lexicographic on letter indices.
  std::strong_ordering operator<=>(const Word& o) const;

 private:
  std::vector<Letter> letters_;
};

// All words of length n over letters 0..alphabet-1, in degree-lex order.
std::vector<Word> words_of_degree(std::size_t alphabet, std::size_t n);

class FreePoly;
class TensorPoly;

class FreePoly {
 public:
  using Terms = std::map<Word, Rational>;

  FreePoly() = default;
  explicit FreePoly(std::optional<std::size_t> maxdeg) : maxdeg_(maxdeg) {}
  FreePoly(const Word& w, const Rational& c = 1, std::optional<std::size_t> maxdeg = std::nullopt);
  static FreePoly scalar(const Rational& c, std::optional<std::size_t> maxdeg = std::nullopt);
  static FreePoly letter(Letter i, std::optional<std::size_t> maxdeg = std::nullopt);

  const Terms& terms() const { return terms_; }
  std::optional<std::size_t> maxdeg() const { return maxdeg_; }
  FreePoly with_maxdeg(std::optional<std::size_t> maxdeg) const;

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  // Coefficient (Z, w).
  Rational coeff(const Word& w) const;
  Rational constant_term() const { return coeff(Word{}); }
  // Largest word length present, -1 for zero.
  long degree() const;
  FreePoly homogeneous(std::size_t d) const;
  FreePoly truncated(std::size_t d) const;

  void add_term(const Word& w, const Rational& c);

  FreePoly& operator+=(const FreePoly& o);
  FreePoly& operator-=(const FreePoly& o);
  FreePoly& operator*=(const Rational& c);

  friend FreePoly operator+(FreePoly a, const FreePoly& b) { return a += b; }
  friend FreePoly operator-(FreePoly a, const FreePoly& b) { return a -= b; }
  friend FreePoly operator-(FreePoly a) { return a *= Rational(-1); }
  friend FreePoly operator*(const Rational& c, FreePoly a) { return a *= c; }
  // Concatenation product.
  friend FreePoly operator*(const FreePoly& a, const FreePoly& b);
  friend bool operator==(const FreePoly& a, const FreePoly& b) { return a.terms_ == b.terms_; }

  // "<num>/<den> * w<i1>.w<i2>..." joined by " + "; the empty word prints as "1", zero as "0".
  std::string str() const;
  static FreePoly parse(const std::string& text);
  nlohmann::json to_json() const;
  static FreePoly from_json(const nlohmann::json& j);
  // Display with a name table, e.g. {"X","Y"}.
  std::string pretty(const std::vector<std::string>& names) const;

 private:
  void check_degree(const Word& w) const;
  Terms terms_;
  std::optional<std::size_t> maxdeg_;
};

class TensorPoly {
 public:
  using Key = std::pair<Word, Word>;
  using Terms = std::map<Key, Rational>;

  TensorPoly() = default;
  explicit TensorPoly(std::optional<std::size_t> maxdeg) : maxdeg_(maxdeg) {}

  const Terms& terms() const { return terms_; }
  std::optional<std::size_t> maxdeg() const { return maxdeg_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(const Word& a, const Word& b) const;
  void add_term(const Word& a, const Word& b, const Rational& c);

  TensorPoly& operator+=(const TensorPoly& o);
  TensorPoly& operator-=(const TensorPoly& o);
  friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
  friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
  friend bool operator==(const TensorPoly& a, const TensorPoly& b) { return a.terms_ == b.terms_; }

  TensorPoly swapped() const;
  std::string str() const;

 private:
  Terms terms_;
  std::optional<std::size_t> maxdeg_;
};

std::optional<std::size_t> merge_maxdeg(std::optional<std::size_t> a, std::optional<std::size_t> b);

FreePoly concat_mul(const FreePoly& p, const FreePoly& q);
FreePoly shuffle_mul(const FreePoly& p, const FreePoly& q);
FreePoly shuffle_words(const Word& u, const Word& v);
FreePoly commutator(const FreePoly& p, const FreePoly& q);

TensorPoly deconcat(const FreePoly& p);
TensorPoly unshuffle(const FreePoly& p);
// Multiplication maps H⊗H -> H.
FreePoly concat_mul(const TensorPoly& t);
FreePoly shuffle_mul(const TensorPoly& t);

FreePoly antipode(const FreePoly& p);
FreePoly series_exp(const FreePoly& p, std::size_t N);
FreePoly series_log(const FreePoly& p, std::size_t N);
FreePoly dynkin(const FreePoly& p);
// Left-normed bracket of the letters of w, expanded.
FreePoly left_bracket(const Word& w);

struct LieCheck {
  bool is_lie = true;
  // Degrees whose homogeneous part fails primitivity.
  std::vector<std::size_t> failing_degrees;
  // Number of nonzero terms in Δ(P_d) - P_d⊗1 - 1⊗P_d, per degree present.
  std::map<std::size_t, std::size_t> defect_terms;
};
LieCheck lie_check(const FreePoly& p);
bool is_lie_element(const FreePoly& p);
bool is_primitive(const FreePoly& p);

// Ree criterion: (Z, u⧢v) = (Z,u)(Z,v) for all nonempty words with |u|+|v| <= N
// over the given alphabet, and (Z,1) = 1.
bool ree_grouplike(const FreePoly& z, std::size_t alphabet, std::size_t N);

// Word pairing <p, q> = sum of products of matching coefficients.
Rational pairing(const FreePoly& p, const FreePoly& q);
Rational pairing(const TensorPoly& t, const Word& u, const Word& v);

}  // namespace hopfflow
