#include "hopfflow/cbhd.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "hopfflow/evaluate.hpp"
#include "hopfflow/idempotents.hpp"
#include "hopfflow/qmatrix.hpp"

namespace hopfflow {

BracketTree::BracketTree(Letter leaf) : leaf_(leaf) {}

BracketTree::BracketTree(BracketTree left, BracketTree right)
    : left_(std::make_shared<const BracketTree>(std::move(left))),
      right_(std::make_shared<const BracketTree>(std::move(right))) {}

BracketTree BracketTree::left_normed(const Word& w) {
  if (w.empty()) throw std::invalid_argument("left_normed: empty word");
  BracketTree t(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) t = BracketTree(t, BracketTree(w[i]));
  return t;
}

FreePoly BracketTree::expand() const {
  if (is_leaf()) return FreePoly::letter(leaf_);
  return commutator(left_->expand(), right_->expand());
}

std::size_t BracketTree::degree() const { return is_leaf() ? 1 : left_->degree() + right_->degree(); }

std::string BracketTree::str(const std::vector<std::string>& names) const {
  if (is_leaf()) return leaf_ < names.size() ? names[leaf_] : "w" + std::to_string(leaf_);
  return "[" + left_->str(names) + "," + right_->str(names) + "]";
}

FreePoly expand(const std::vector<BracketTerm>& terms) {
  FreePoly p;
  for (const auto& t : terms) p += t.coefficient * t.tree.expand();
  return p;
}

std::vector<std::string> default_letter_names(std::size_t n) {
  static const char* base[] = {"X", "Y", "Z", "W", "U", "V"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(i < 6 ? base[i] : "X" + std::to_string(i + 1));
  return out;
}

FreePoly phi_m(std::size_t n_letters, std::size_t m) {
  if (n_letters == 0 || m == 0) throw std::invalid_argument("phi_m: need n_letters >= 1 and m >= 1");
  FreePoly out;
  std::vector<std::size_t> e(n_letters, 0);
  // Weak compositions of m into n_letters parts.
  auto rec = [&](std::size_t k, std::size_t left, auto&& self) -> void {
    if (k + 1 == n_letters) {
      e[k] = left;
      std::vector<Letter> letters;
      Rational c(1);
      for (std::size_t i = 0; i < n_letters; ++i) {
        letters.insert(letters.end(), e[i], static_cast<Letter>(i));
        c /= factorial(static_cast<unsigned>(e[i]));
      }
      out += c * pi1_word(Word(letters));
      return;
    }
    for (std::size_t i = 0; i <= left; ++i) {
      e[k] = i;
      self(k + 1, left - i, self);
    }
  };
  rec(0, m, rec);
  return out;
}

FreePoly cbhd_log(std::size_t N, std::size_t n_letters) {
  FreePoly prod = FreePoly::scalar(1, N);
  for (std::size_t i = 0; i < n_letters; ++i) prod = prod * series_exp(FreePoly::letter(static_cast<Letter>(i), N), N);
  return series_log(prod, N).with_maxdeg(std::nullopt);
}

const FreePoly& cbhd_tail(std::size_t N) {
  static std::mutex mu;
  static std::map<std::size_t, FreePoly> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  FreePoly full = cbhd_log(N), tail;
  for (const auto& [w, c] : full.terms())
    if (w.size() >= 2) tail.add_term(w, c);
  return cache.emplace(N, std::move(tail)).first->second;
}

namespace {

std::map<std::size_t, FreePoly> split_by_degree(const FreePoly& p) {
  std::map<std::size_t, FreePoly> parts;
  for (const auto& [w, c] : p.terms()) parts[w.size()].add_term(w, c);
  return parts;
}

// Σ c_w [w] with the first two letters increasing; words starting xx vanish.
std::map<Word, Rational> oriented_dynkin(const FreePoly& part, std::size_t n) {
  std::map<Word, Rational> acc;
  for (const auto& [w, c] : part.terms()) {
    Rational coeff = c / Rational(static_cast<long>(n));
    Word v = w;
    if (n >= 2) {
      if (w[0] == w[1]) continue;
      if (w[0] > w[1]) {
        std::vector<Letter> l = w.letters();
        std::swap(l[0], l[1]);
        v = Word(l);
        coeff = -coeff;
      }
    }
    acc[v] += coeff;
  }
  std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
  return acc;
}

}  // namespace

std::vector<BracketTerm> dynkin_commutators(const FreePoly& p) {
  LieCheck lc = lie_check(p);
  if (!lc.is_lie) throw NotLie("to_nested_commutators: input is not a Lie element");
  std::vector<BracketTerm> out;
  for (const auto& [n, part] : split_by_degree(p)) {
    if (n == 0) throw NotLie("to_nested_commutators: nonzero constant term");
    for (const auto& [w, c] : oriented_dynkin(part, n)) out.push_back({BracketTree::left_normed(w), c});
  }
  return out;
}

std::vector<BracketTerm> to_nested_commutators(const FreePoly& p) {
  LieCheck lc = lie_check(p);
  if (!lc.is_lie) throw NotLie("to_nested_commutators: input is not a Lie element");
  std::vector<BracketTerm> out;
  for (const auto& [n, part] : split_by_degree(p)) {
    if (n == 0) throw NotLie("to_nested_commutators: nonzero constant term");
    auto raw = oriented_dynkin(part, n);
    // Group by letter content; brackets preserve it.
    std::map<std::vector<Letter>, std::vector<std::pair<Word, Rational>>> groups;
    for (const auto& [w, c] : raw) {
      std::vector<Letter> content = w.letters();
      std::sort(content.begin(), content.end());
      groups[content].emplace_back(w, c);
    }
    for (const auto& [content, terms] : groups) {
      std::vector<Letter> perm = content;
      std::vector<Word> candidates;
      do {
        if (n == 1 || perm[0] < perm[1]) candidates.emplace_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
      std::vector<FreePoly> expansions;
      std::map<Word, std::size_t> row_of;
      for (const auto& cw : candidates) {
        expansions.push_back(left_bracket(cw));
        for (const auto& [w, c] : expansions.back().terms()) row_of.emplace(w, row_of.size());
      }
      FreePoly target;
      for (const auto& [w, c] : terms) target += c * left_bracket(w);
      for (const auto& [w, c] : target.terms()) row_of.emplace(w, row_of.size());
      QMatrix m(row_of.size(), candidates.size());
      for (std::size_t j = 0; j < candidates.size(); ++j)
        for (const auto& [w, c] : expansions[j].terms()) m(row_of[w], j) = c;
      // Greedy independent columns in degree-lex order.
      std::vector<std::size_t> chosen;
      for (std::size_t j = 0; j < candidates.size(); ++j) {
        QMatrix sub(row_of.size(), chosen.size() + 1);
        for (std::size_t k = 0; k <= chosen.size(); ++k) {
          std::size_t col = k < chosen.size() ? chosen[k] : j;
          for (std::size_t i = 0; i < row_of.size(); ++i) sub(i, k) = m(i, col);
        }
        if (rank(sub) == chosen.size() + 1) chosen.push_back(j);
      }
      QMatrix basis(row_of.size(), chosen.size());
      for (std::size_t k = 0; k < chosen.size(); ++k)
        for (std::size_t i = 0; i < row_of.size(); ++i) basis(i, k) = m(i, chosen[k]);
      std::vector<Rational> b(row_of.size()), x;
      for (const auto& [w, c] : target.terms()) b[row_of[w]] = c;
      if (!solve(basis, b, x)) throw NotLie("to_nested_commutators: component outside the bracket span");
      for (std::size_t k = 0; k < chosen.size(); ++k)
        if (x[k] != 0) out.push_back({BracketTree::left_normed(candidates[chosen[k]]), x[k]});
    }
  }
  return out;
}

Eigen::MatrixXd evaluate_matrix(const FreePoly& p, const std::vector<Eigen::MatrixXd>& letters) {
  if (letters.empty()) throw ShapeMismatch("evaluate_matrix: no matrices");
  const auto n = letters[0].rows();
  for (const auto& m : letters)
    if (m.rows() != n || m.cols() != n) throw ShapeMismatch("evaluate_matrix: matrices must be square and equal size");
  Eigen::MatrixXd one = Eigen::MatrixXd::Identity(n, n), zero = Eigen::MatrixXd::Zero(n, n);
  return evaluate(p, letters, one, zero, [](const Rational& c, const Eigen::MatrixXd& m) -> Eigen::MatrixXd {
    return c.get_d() * m;
  });
}

Eigen::MatrixXd cbhd_eval(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, std::size_t N) {
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw ShapeMismatch("cbhd_eval: A and B must be square of equal size");
  return evaluate_matrix(cbhd_log(N), {A, B});
}

}  // namespace hopfflow
