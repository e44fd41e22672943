#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "hopfflow/freetensor.hpp"

using namespace hopfflow;

namespace {

const Letter X = 0, Y = 1;

FreePoly w(std::initializer_list<Letter> l, Rational c = 1) { return FreePoly(Word(l), c); }

enum class Side { Tensor, Shuffle };

FreePoly mul(Side s, const FreePoly& a, const FreePoly& b) {
  return s == Side::Tensor ? concat_mul(a, b) : shuffle_mul(a, b);
}
FreePoly mul(Side s, const TensorPoly& t) { return s == Side::Tensor ? concat_mul(t) : shuffle_mul(t); }
TensorPoly cop(Side s, const FreePoly& p) { return s == Side::Tensor ? unshuffle(p) : deconcat(p); }

// Product in H⊗H, componentwise.
TensorPoly tensor_mul(Side s, const TensorPoly& a, const TensorPoly& b) {
  TensorPoly r;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      FreePoly l = mul(s, FreePoly(ka.first), FreePoly(kb.first));
      FreePoly rr = mul(s, FreePoly(ka.second), FreePoly(kb.second));
      for (const auto& [u, x] : l.terms())
        for (const auto& [v, y] : rr.terms()) r.add_term(u, v, ca * cb * x * y);
    }
  return r;
}

using Triple = std::map<std::tuple<Word, Word, Word>, Rational>;

void add(Triple& t, const Word& a, const Word& b, const Word& c, const Rational& x) {
  auto& v = t[{a, b, c}];
  v += x;
}

void prune(Triple& t) { std::erase_if(t, [](const auto& kv) { return kv.second == 0; }); }

std::vector<Word> all_words(std::size_t alphabet, std::size_t N) {
  std::vector<Word> out;
  for (std::size_t d = 0; d <= N; ++d)
    for (auto& x : words_of_degree(alphabet, d)) out.push_back(x);
  return out;
}

}  // namespace

TEST(FreeTensor, ConcatBasics) {
  EXPECT_EQ(concat_mul(w({X}), w({Y})), w({X, Y}));
  EXPECT_EQ(concat_mul(FreePoly::scalar(1), w({X, Y, X})), w({X, Y, X}));
  EXPECT_EQ((w({X}) + w({Y})) * w({X}), w({X, X}) + w({Y, X}));
}

TEST(FreeTensor, TruncationMergesToMinimum) {
  FreePoly a = FreePoly(Word{X}, 1, 3);
  FreePoly b = FreePoly(Word{Y, Y}, 1, 2);
  FreePoly c = a * b;
  EXPECT_EQ(c.maxdeg(), 2u);
  EXPECT_TRUE(c.is_zero());
}

TEST(FreeTensor, ShuffleExamples) {
  const Letter i = 0, j = 1, k = 2, l = 3;
  EXPECT_EQ(shuffle_mul(w({i, j}), w({k})), w({i, j, k}) + w({i, k, j}) + w({k, i, j}));
  FreePoly six = w({i, j, k, l}) + w({i, k, j, l}) + w({i, k, l, j}) + w({k, i, j, l}) + w({k, i, l, j}) +
                 w({k, l, i, j});
  EXPECT_EQ(shuffle_mul(w({i, j}), w({k, l})), six);
  EXPECT_EQ(shuffle_mul(w({i, j, k}), FreePoly::scalar(1)), w({i, j, k}));
}

TEST(FreeTensor, ShuffleCountsAndCommutativity) {
  FreePoly a = w({X, Y, X});
  FreePoly b = w({Y, Y});
  FreePoly s = shuffle_mul(a, b);
  EXPECT_EQ(s, shuffle_mul(b, a));
  Rational total = 0;
  for (const auto& [u, c] : s.terms()) total += c;
  EXPECT_EQ(total, 10);  // binomial(5, 2)
}

TEST(FreeTensor, DeconcatExamples) {
  TensorPoly d = deconcat(w({X, Y}));
  TensorPoly expect;
  expect.add_term(Word{X, Y}, Word{}, 1);
  expect.add_term(Word{X}, Word{Y}, 1);
  expect.add_term(Word{}, Word{X, Y}, 1);
  EXPECT_EQ(d, expect);
  TensorPoly one;
  one.add_term(Word{}, Word{}, 1);
  EXPECT_EQ(deconcat(FreePoly::scalar(1)), one);
}

TEST(FreeTensor, UnshuffleExamples) {
  TensorPoly d = unshuffle(w({X}));
  TensorPoly expect;
  expect.add_term(Word{X}, Word{}, 1);
  expect.add_term(Word{}, Word{X}, 1);
  EXPECT_EQ(d, expect);

  TensorPoly e2;
  e2.add_term(Word{X, Y}, Word{}, 1);
  e2.add_term(Word{X}, Word{Y}, 1);
  e2.add_term(Word{Y}, Word{X}, 1);
  e2.add_term(Word{}, Word{X, Y}, 1);
  EXPECT_EQ(unshuffle(w({X, Y})), e2);

  for (const auto& u : all_words(2, 5)) {
    TensorPoly t = unshuffle(FreePoly(u));
    EXPECT_EQ(t, t.swapped());
  }
}

TEST(FreeTensor, Duality) {
  // <Δw, u⊗v> = <w, u·v> for both pairs, total degree <= 5.
  for (std::size_t n = 0; n <= 5; ++n)
    for (const auto& word : words_of_degree(2, n)) {
      TensorPoly dc = deconcat(FreePoly(word));
      TensorPoly us = unshuffle(FreePoly(word));
      for (std::size_t a = 0; a <= n; ++a)
        for (const auto& u : words_of_degree(2, a))
          for (const auto& v : words_of_degree(2, n - a)) {
            EXPECT_EQ(pairing(dc, u, v), pairing(FreePoly(word), concat_mul(FreePoly(u), FreePoly(v))));
            EXPECT_EQ(pairing(us, u, v), pairing(FreePoly(word), shuffle_words(u, v)));
          }
    }
}

TEST(FreeTensor, AntipodeExamples) {
  EXPECT_EQ(antipode(w({X, Y})), w({Y, X}));
  EXPECT_EQ(antipode(FreePoly::scalar(1)), FreePoly::scalar(1));
  EXPECT_EQ(antipode(w({0, 1, 2})), w({2, 1, 0}, -1));
}

class HopfAxioms : public ::testing::TestWithParam<Side> {};

TEST_P(HopfAxioms, ThroughDegreeSix) {
  Side s = GetParam();
  const std::size_t N = 6;
  auto words = all_words(2, N);
  for (const auto& word : words) {
    FreePoly p(word);
    TensorPoly d = cop(s, p);

    // Counit laws.
    FreePoly left, right;
    for (const auto& [k, c] : d.terms()) {
      if (k.first.empty()) left.add_term(k.second, c);
      if (k.second.empty()) right.add_term(k.first, c);
    }
    EXPECT_EQ(left, p);
    EXPECT_EQ(right, p);

    // Coassociativity.
    Triple l3, r3;
    for (const auto& [k, c] : d.terms()) {
      TensorPoly dl = cop(s, FreePoly(k.first));
      TensorPoly dr = cop(s, FreePoly(k.second));
      for (const auto& [k2, c2] : dl.terms()) add(l3, k2.first, k2.second, k.second, c * c2);
      for (const auto& [k2, c2] : dr.terms()) add(r3, k.first, k2.first, k2.second, c * c2);
    }
    prune(l3);
    prune(r3);
    EXPECT_EQ(l3, r3);

    // Antipode laws: m(S⊗id)Δ = m(id⊗S)Δ = uη.
    FreePoly sl, sr;
    for (const auto& [k, c] : d.terms()) {
      sl += c * mul(s, antipode(FreePoly(k.first)), FreePoly(k.second));
      sr += c * mul(s, FreePoly(k.first), antipode(FreePoly(k.second)));
    }
    FreePoly expect = word.empty() ? FreePoly::scalar(1) : FreePoly{};
    EXPECT_EQ(sl, expect);
    EXPECT_EQ(sr, expect);
  }
  // Bialgebra compatibility.
  for (const auto& u : words)
    for (const auto& v : words) {
      if (u.size() + v.size() > N) continue;
      EXPECT_EQ(cop(s, mul(s, FreePoly(u), FreePoly(v))), tensor_mul(s, cop(s, FreePoly(u)), cop(s, FreePoly(v))));
    }
}

INSTANTIATE_TEST_SUITE_P(BothStructures, HopfAxioms, ::testing::Values(Side::Tensor, Side::Shuffle));

TEST(FreeTensor, ExpLog) {
  FreePoly x = w({X});
  FreePoly e = series_exp(x, 3);
  EXPECT_EQ(e, FreePoly::scalar(1) + x + w({X, X}, Rational(1, 2)) + w({X, X, X}, Rational(1, 6)));
  FreePoly xy = w({X}) + w({Y});
  for (std::size_t N : {1u, 3u, 6u}) EXPECT_EQ(series_log(series_exp(xy, N), N), xy.truncated(N));
  FreePoly prod = series_exp(x, 5) * series_exp(-x, 5);
  EXPECT_EQ(prod, FreePoly::scalar(1, 5));
  FreePoly g = FreePoly::scalar(1) + w({X, Y}, Rational(2, 3)) + w({Y});
  EXPECT_EQ(series_exp(series_log(g, 5), 5), g.truncated(5));
  EXPECT_THROW(series_exp(g, 3), WrongConstantTerm);
  EXPECT_THROW(series_log(x, 3), WrongConstantTerm);
}

TEST(FreeTensor, ExpOfPrimitiveIsGrouplike) {
  FreePoly z = w({X}) + commutator(w({X}), w({Y}));
  FreePoly g = series_exp(z, 5);
  EXPECT_TRUE(ree_grouplike(g, 2, 5));
  EXPECT_FALSE(ree_grouplike(g + w({X, Y}), 2, 5));
}

TEST(FreeTensor, DynkinExamples) {
  EXPECT_EQ(dynkin(w({X})), w({X}));
  EXPECT_EQ(dynkin(w({X, Y})), w({X, Y}) - w({Y, X}));
  FreePoly c = w({X, Y}) - w({Y, X});
  EXPECT_EQ(dynkin(c), Rational(2) * c);
}

TEST(FreeTensor, LieElements) {
  EXPECT_TRUE(is_lie_element(w({X, Y}) - w({Y, X})));
  LieCheck bad = lie_check(w({X, Y}));
  EXPECT_FALSE(bad.is_lie);
  ASSERT_EQ(bad.failing_degrees.size(), 1u);
  EXPECT_EQ(bad.failing_degrees[0], 2u);
  FreePoly z = series_log(series_exp(w({X}), 4) * series_exp(w({Y}), 4), 4);
  EXPECT_TRUE(is_lie_element(z));
}

TEST(FreeTensor, SerializationRoundTrip) {
  FreePoly p = w({}, Rational(-3, 4)) + w({1, 0}, Rational(1, 2)) + w({0}, 7);
  EXPECT_EQ(p.str(), "-3/4 * 1 + 7/1 * w0 + 1/2 * w1.w0");
  EXPECT_EQ(FreePoly::parse(p.str()), p);
  EXPECT_EQ(FreePoly::from_json(p.to_json()), p);
  EXPECT_EQ(p.to_json()[2]["word"], nlohmann::json::array({1, 0}));
  EXPECT_EQ(p.pretty({"X", "Y"}), "-3/4 + 7 X + 1/2 YX");
}

TEST(FreeTensor, WordOrderIsDegreeLex) {
  EXPECT_LT(Word({5}), Word({0, 0}));
  EXPECT_LT(Word({0, 1}), Word({1, 0}));
  auto ws = words_of_degree(3, 2);
  ASSERT_EQ(ws.size(), 9u);
  EXPECT_TRUE(std::is_sorted(ws.begin(), ws.end()));
}
