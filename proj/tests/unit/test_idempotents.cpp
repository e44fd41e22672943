#include <gtest/gtest.h>

#include "hopfflow/idempotents.hpp"

using namespace hopfflow;

namespace {

constexpr auto T = HopfSide::ConcatUnshuffle;
constexpr auto Sh = HopfSide::ShuffleDeconcat;

Permutation perm(const std::string& s) {
  std::vector<unsigned> v;
  for (char c : s) v.push_back(static_cast<unsigned>(c - '0'));
  return Permutation(v);
}

}  // namespace

TEST(Idempotents, ConvolutionUnitAndInverse) {
  for (auto side : {T, Sh}) {
    auto id = GradedEndo::identity(2, 5, side);
    auto ue = GradedEndo::unit_counit(2, 5, side);
    auto S = GradedEndo::antipode(2, 5, side);
    EXPECT_EQ(convolve(ue, id), id);
    EXPECT_EQ(convolve(id, ue), id);
    EXPECT_EQ(convolve(id, S), ue);
    EXPECT_EQ(convolve(S, id), ue);
  }
  auto id2 = adams(2, 4);
  EXPECT_EQ(id2.apply(Word{0}), FreePoly(Word{0}, 2));
  EXPECT_THROW(convolve(GradedEndo::identity(2, 3, T), GradedEndo::identity(2, 3, Sh)), SideMismatch);
}

TEST(Idempotents, DynkinIsAntipodeConvolvedWithGrading) {
  const std::size_t N = 6;
  auto D = convolve(GradedEndo::antipode(2, N, T), GradedEndo::grading(2, N, T));
  for (std::size_t d = 0; d <= N; ++d)
    for (const auto& w : words_of_degree(2, d)) EXPECT_EQ(D.apply(w), dynkin(FreePoly(w))) << FreePoly(w).str();
}

TEST(Idempotents, Pi1OnLetters) {
  auto p1 = eulerian(1, 3);
  EXPECT_EQ(p1.apply(Word{1}), FreePoly(Word{1}));
  EXPECT_THROW(eulerian(4, 3), DegreeOutOfRange);
}

TEST(Idempotents, Pi1Degree3Table) {
  std::map<std::string, Rational> expect{{"123", Rational(1, 3)},  {"132", Rational(-1, 6)}, {"213", Rational(-1, 6)},
                                         {"231", Rational(-1, 6)}, {"312", Rational(-1, 6)}, {"321", Rational(1, 3)}};
  FreePoly table;
  for (const auto& [s, c] : expect) table.add_term(perm(s).word(), c);
  EXPECT_EQ(pi1_word(Word{0, 1, 2}), table);
  EXPECT_EQ(eulerian(1, 3, 3).apply(Word{0, 1, 2}), table);
  EXPECT_EQ(descent_pi1_word(3), table);
}

TEST(Idempotents, Pi1Degree4Table) {
  const std::vector<std::string> minus{"1243", "1324", "1342", "1423", "2134", "2314",
                                       "2341", "2413", "3124", "3412", "4123"};
  const std::vector<std::string> plus{"1432", "2143", "2431", "3142", "3214", "3241",
                                      "3421", "4132", "4213", "4231", "4312"};
  FreePoly table;
  table.add_term(perm("1234").word(), Rational(1, 4));
  table.add_term(perm("4321").word(), Rational(-1, 4));
  for (const auto& s : minus) {
    EXPECT_EQ(perm(s).descents(), 1u) << s;
    table.add_term(perm(s).word(), Rational(-1, 12));
  }
  for (const auto& s : plus) {
    EXPECT_EQ(perm(s).descents(), 2u) << s;
    table.add_term(perm(s).word(), Rational(1, 12));
  }
  EXPECT_EQ(table.size(), 24u);
  EXPECT_EQ(pi1_word(Word{0, 1, 2, 3}), table);
  EXPECT_EQ(descent_pi1_word(4), table);
  EXPECT_EQ(eulerian(1, 4, 4).apply(Word{0, 1, 2, 3}), table);
}

TEST(Idempotents, DescentFormulaMatchesLogOfIdentity) {
  for (unsigned n = 1; n <= 6; ++n) {
    std::vector<Letter> l(n);
    for (unsigned i = 0; i < n; ++i) l[i] = i;
    EXPECT_EQ(descent_pi1_word(n), pi1_word(Word(l))) << "n=" << n;
  }
  for (const auto& [s, c] : descent_pi1(5))
    if (s == Permutation::identity(5)) EXPECT_EQ(c, Rational(1, 5));
}

TEST(Idempotents, Pi1WordMatchesMatrices) {
  auto p1 = eulerian(1, 6);
  for (std::size_t d = 1; d <= 6; ++d)
    for (const auto& w : words_of_degree(2, d)) EXPECT_EQ(p1.apply(w), pi1_word(w));
}

class EulerianFamily : public ::testing::TestWithParam<HopfSide> {};

TEST_P(EulerianFamily, OrthogonalAndComplete) {
  const std::size_t N = 6;
  auto side = GetParam();
  std::vector<GradedEndo> pi;
  for (std::size_t n = 0; n <= N; ++n) pi.push_back(eulerian(n, N, 2, side));
  GradedEndo sum(2, N, side);
  for (const auto& p : pi) sum += p;
  EXPECT_EQ(sum, GradedEndo::identity(2, N, side));
  GradedEndo zero(2, N, side);
  for (std::size_t m = 0; m <= N; ++m)
    for (std::size_t k = 0; k <= N; ++k) EXPECT_EQ(pi[m] * pi[k], m == k ? pi[k] : zero) << m << "," << k;
}

INSTANTIATE_TEST_SUITE_P(BothSides, EulerianFamily, ::testing::Values(T, Sh));

TEST(Idempotents, ShuffleSideIsTransposeOfTensorSide) {
  // The word pairing makes the two Hopf structures dual, so every π_n on one
  // side is the transpose of π_n on the other.
  for (std::size_t n = 1; n <= 3; ++n) {
    auto a = eulerian(n, 5, 2, T);
    auto b = eulerian(n, 5, 2, Sh);
    for (std::size_t d = 0; d <= 5; ++d) EXPECT_EQ(a.block(d).transpose(), b.block(d));
  }
}

TEST(Idempotents, Pi1ImageIsPrimitive) {
  auto p1 = eulerian(1, 6);
  for (std::size_t d = 1; d <= 6; ++d)
    for (const auto& w : words_of_degree(2, d)) EXPECT_TRUE(is_primitive(p1.apply(w)));
}

TEST(Idempotents, AdamsOperations) {
  const std::size_t N = 5;
  EXPECT_EQ(adams(1, N), GradedEndo::identity(2, N, T));
  EXPECT_EQ(adams(2, N) * adams(3, N), adams(6, N));
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned k = 1; k <= 3; ++k) EXPECT_EQ(adams(n, N) * adams(k, N), adams(n * k, N));
  // id^{*l} = sum_m l^m π_m.
  GradedEndo expansion(2, N, T);
  for (std::size_t m = 0; m <= N; ++m) expansion += pow(Rational(3), static_cast<long>(m)) * eulerian(m, N);
  EXPECT_EQ(adams(3, N), expansion);
}

TEST(Idempotents, PermutationBasics) {
  auto s = perm("3142");
  EXPECT_EQ(s.descents(), 2u);
  EXPECT_EQ(s.inverse(), perm("2413"));
  EXPECT_EQ(Permutation::all(4).size(), 24u);
  EXPECT_THROW(Permutation({1, 1}), std::invalid_argument);
}
