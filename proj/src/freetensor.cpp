#include "hopfflow/freetensor.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hopfflow {

Word Word::sub(std::size_t pos, std::size_t len) const {
  if (pos >= letters_.size()) return Word{};
  std::size_t end = (len == std::string::npos) ? letters_.size() : std::min(letters_.size(), pos + len);
  return Word(std::vector<Letter>(letters_.begin() + static_cast<long>(pos), letters_.begin() + static_cast<long>(end)));
}

Word Word::reversed() const { return Word(std::vector<Letter>(letters_.rbegin(), letters_.rend())); }

Word Word::operator+(const Word& o) const {
  std::vector<Letter> l = letters_;
  l.insert(l.end(), o.letters_.begin(), o.letters_.end());
  return Word(std::move(l));
}

std::strong_ordering Word::operator<=>(const Word& o) const {
  if (auto c = letters_.size() <=> o.letters_.size(); c != 0) return c;
  return letters_ <=> o.letters_;
}

std::vector<Word> words_of_degree(std::size_t alphabet, std::size_t n) {
  std::vector<Word> out;
  std::vector<Letter> cur(n, 0);
  if (alphabet == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  while (true) {
    out.emplace_back(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++cur[i] < alphabet) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

std::optional<std::size_t> merge_maxdeg(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

// ---- FreePoly ----

FreePoly::FreePoly(const Word& w, const Rational& c, std::optional<std::size_t> maxdeg) : maxdeg_(maxdeg) {
  add_term(w, c);
}

FreePoly FreePoly::scalar(const Rational& c, std::optional<std::size_t> maxdeg) { return FreePoly(Word{}, c, maxdeg); }

FreePoly FreePoly::letter(Letter i, std::optional<std::size_t> maxdeg) { return FreePoly(Word{i}, 1, maxdeg); }

FreePoly FreePoly::with_maxdeg(std::optional<std::size_t> maxdeg) const {
  FreePoly r(maxdeg);
  for (const auto& [w, c] : terms_) r.add_term(w, c);
  return r;
}

Rational FreePoly::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

long FreePoly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long>(terms_.rbegin()->first.size());
}

FreePoly FreePoly::homogeneous(std::size_t d) const {
  FreePoly r(maxdeg_);
  for (const auto& [w, c] : terms_)
    if (w.size() == d) r.terms_.emplace(w, c);
  return r;
}

FreePoly FreePoly::truncated(std::size_t d) const {
  FreePoly r(merge_maxdeg(maxdeg_, d));
  for (const auto& [w, c] : terms_)
    if (w.size() <= d) r.terms_.emplace(w, c);
  return r;
}

void FreePoly::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  if (maxdeg_ && w.size() > *maxdeg_) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

FreePoly& FreePoly::operator+=(const FreePoly& o) {
  maxdeg_ = merge_maxdeg(maxdeg_, o.maxdeg_);
  if (maxdeg_) std::erase_if(terms_, [&](const auto& kv) { return kv.first.size() > *maxdeg_; });
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& o) {
  maxdeg_ = merge_maxdeg(maxdeg_, o.maxdeg_);
  if (maxdeg_) std::erase_if(terms_, [&](const auto& kv) { return kv.first.size() > *maxdeg_; });
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

FreePoly& FreePoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, x] : terms_) x *= c;
  return *this;
}

FreePoly operator*(const FreePoly& a, const FreePoly& b) { return concat_mul(a, b); }

std::string FreePoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << " * ";
    if (w.empty()) {
      os << '1';
      continue;
    }
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? ".w" : "w") << w[i];
  }
  return os.str();
}

FreePoly FreePoly::parse(const std::string& text) {
  FreePoly p;
  std::string t = text;
  if (t == "0") return p;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    std::size_t next = t.find(" + ", pos);
    std::string term = t.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    auto star = term.find(" * ");
    if (star == std::string::npos) throw ParseError("bad FreePoly term: '" + term + "'");
    Rational c = parse_rational(term.substr(0, star));
    std::string ws = term.substr(star + 3);
    std::vector<Letter> letters;
    if (ws != "1") {
      std::stringstream ss(ws);
      std::string tok;
      while (std::getline(ss, tok, '.')) {
        if (tok.size() < 2 || tok[0] != 'w') throw ParseError("bad letter: '" + tok + "'");
        letters.push_back(static_cast<Letter>(std::stoul(tok.substr(1))));
      }
    }
    p.add_term(Word(letters), c);
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return p;
}

namespace {

nlohmann::json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return nlohmann::json(z.get_si());
  return nlohmann::json(z.get_str());
}

mpz_class json_integer(const nlohmann::json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>(), 10);
  return mpz_class(std::to_string(j.get<long long>()), 10);
}

}  // namespace

nlohmann::json FreePoly::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [w, c] : terms_) {
    arr.push_back({{"word", w.letters()}, {"num", integer_json(c.get_num())}, {"den", integer_json(c.get_den())}});
  }
  return arr;
}

FreePoly FreePoly::from_json(const nlohmann::json& j) {
  FreePoly p;
  for (const auto& t : j) {
    Rational c(json_integer(t.at("num")), json_integer(t.at("den")));
    c.canonicalize();
    p.add_term(Word(t.at("word").get<std::vector<Letter>>()), c);
  }
  return p;
}

std::string FreePoly::pretty(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Rational a = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    bool unit = (a == 1);
    if (!unit) os << a.get_str();
    if (w.empty()) {
      if (unit) os << '1';
      continue;
    }
    if (!unit) os << ' ';
    for (std::size_t i = 0; i < w.size(); ++i) {
      Letter l = w[i];
      os << (l < names.size() ? names[l] : "w" + std::to_string(l));
    }
  }
  return os.str();
}

// ---- TensorPoly ----

Rational TensorPoly::coeff(const Word& a, const Word& b) const {
  auto it = terms_.find({a, b});
  return it == terms_.end() ? Rational(0) : it->second;
}

void TensorPoly::add_term(const Word& a, const Word& b, const Rational& c) {
  if (c == 0) return;
  if (maxdeg_ && a.size() + b.size() > *maxdeg_) return;
  auto [it, inserted] = terms_.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
  maxdeg_ = merge_maxdeg(maxdeg_, o.maxdeg_);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
  return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
  maxdeg_ = merge_maxdeg(maxdeg_, o.maxdeg_);
  for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, -c);
  return *this;
}

TensorPoly TensorPoly::swapped() const {
  TensorPoly r(maxdeg_);
  for (const auto& [k, c] : terms_) r.add_term(k.second, k.first, c);
  return r;
}

std::string TensorPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << " * " << FreePoly(k.first).str().substr(6) << " (x) " << FreePoly(k.second).str().substr(6);
  }
  return os.str();
}

// ---- products and coproducts ----

FreePoly concat_mul(const FreePoly& p, const FreePoly& q) {
  FreePoly r(merge_maxdeg(p.maxdeg(), q.maxdeg()));
  auto md = r.maxdeg();
  for (const auto& [u, a] : p.terms())
    for (const auto& [v, b] : q.terms()) {
      if (md && u.size() + v.size() > *md) continue;
      r.add_term(u + v, a * b);
    }
  return r;
}

namespace {

void shuffle_into(const Word& u, const Word& v, const Rational& c, FreePoly& out) {
  // u ⧢ v = (u ⧢ v')·last(v) + (u' ⧢ v)·last(u), applied with a shared suffix.
  struct Frame {
    std::size_t i, j;
    std::vector<Letter> suffix;
  };
  std::vector<Frame> stack{{u.size(), v.size(), {}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.i == 0 || f.j == 0) {
      std::vector<Letter> w;
      w.reserve(f.i + f.j + f.suffix.size());
      for (std::size_t k = 0; k < f.i; ++k) w.push_back(u[k]);
      for (std::size_t k = 0; k < f.j; ++k) w.push_back(v[k]);
      w.insert(w.end(), f.suffix.rbegin(), f.suffix.rend());
      out.add_term(Word(std::move(w)), c);
      continue;
    }
    Frame a{f.i, f.j - 1, f.suffix};
    a.suffix.push_back(v[f.j - 1]);
    Frame b{f.i - 1, f.j, std::move(f.suffix)};
    b.suffix.push_back(u[f.i - 1]);
    stack.push_back(std::move(a));
    stack.push_back(std::move(b));
  }
}

}  // namespace

FreePoly shuffle_words(const Word& u, const Word& v) {
  FreePoly r;
  shuffle_into(u, v, 1, r);
  return r;
}

FreePoly shuffle_mul(const FreePoly& p, const FreePoly& q) {
  FreePoly r(merge_maxdeg(p.maxdeg(), q.maxdeg()));
  auto md = r.maxdeg();
  for (const auto& [u, a] : p.terms())
    for (const auto& [v, b] : q.terms()) {
      if (md && u.size() + v.size() > *md) continue;
      shuffle_into(u, v, a * b, r);
    }
  return r;
}

FreePoly commutator(const FreePoly& p, const FreePoly& q) { return p * q - q * p; }

TensorPoly deconcat(const FreePoly& p) {
  TensorPoly t(p.maxdeg());
  for (const auto& [w, c] : p.terms())
    for (std::size_t k = 0; k <= w.size(); ++k) t.add_term(w.sub(0, k), w.sub(k), c);
  return t;
}

TensorPoly unshuffle(const FreePoly& p) {
  TensorPoly t(p.maxdeg());
  for (const auto& [w, c] : p.terms()) {
    std::size_t n = w.size();
    if (n > 30) throw std::length_error("unshuffle: word too long");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<Letter> a, b;
      for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1u ? b : a).push_back(w[i]);
      t.add_term(Word(std::move(a)), Word(std::move(b)), c);
    }
  }
  return t;
}

FreePoly concat_mul(const TensorPoly& t) {
  FreePoly r(t.maxdeg());
  for (const auto& [k, c] : t.terms()) r.add_term(k.first + k.second, c);
  return r;
}

FreePoly shuffle_mul(const TensorPoly& t) {
  FreePoly r(t.maxdeg());
  for (const auto& [k, c] : t.terms()) shuffle_into(k.first, k.second, c, r);
  return r;
}

FreePoly antipode(const FreePoly& p) {
  FreePoly r(p.maxdeg());
  for (const auto& [w, c] : p.terms()) r.add_term(w.reversed(), (w.size() % 2) ? Rational(-c) : c);
  return r;
}

FreePoly series_exp(const FreePoly& p, std::size_t N) {
  if (p.constant_term() != 0) throw WrongConstantTerm("series_exp: constant term must be zero");
  FreePoly x = p.truncated(N);
  FreePoly result = FreePoly::scalar(1, N);
  FreePoly power = FreePoly::scalar(1, N);
  for (std::size_t k = 1; k <= N; ++k) {
    power = power * x;
    if (power.is_zero()) break;
    result += Rational(1) / factorial(static_cast<unsigned>(k)) * power;
  }
  return result;
}

FreePoly series_log(const FreePoly& p, std::size_t N) {
  if (p.constant_term() != 1) throw WrongConstantTerm("series_log: constant term must be one");
  FreePoly x = p.truncated(N) - FreePoly::scalar(1, N);
  FreePoly result(N);
  FreePoly power = FreePoly::scalar(1, N);
  for (std::size_t k = 1; k <= N; ++k) {
    power = power * x;
    if (power.is_zero()) break;
    Rational c(k % 2 ? 1 : -1, static_cast<long>(k));
    result += c * power;
  }
  return result;
}

FreePoly left_bracket(const Word& w) {
  if (w.empty()) return FreePoly{};
  FreePoly b = FreePoly::letter(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) {
    FreePoly x = FreePoly::letter(w[i]);
    b = b * x - x * b;
  }
  return b;
}

FreePoly dynkin(const FreePoly& p) {
  FreePoly r(p.maxdeg());
  for (const auto& [w, c] : p.terms()) r += c * left_bracket(w);
  return r;
}

bool is_primitive(const FreePoly& p) {
  FreePoly q = p.with_maxdeg(std::nullopt);
  TensorPoly d = unshuffle(q);
  for (const auto& [w, c] : q.terms()) {
    d.add_term(w, Word{}, -c);
    d.add_term(Word{}, w, -c);
  }
  return d.is_zero();
}

LieCheck lie_check(const FreePoly& p) {
  LieCheck out;
  std::map<std::size_t, FreePoly> parts;
  for (const auto& [w, c] : p.terms()) parts[w.size()].add_term(w, c);
  for (const auto& [d, part] : parts) {
    TensorPoly t = unshuffle(part);
    for (const auto& [w, c] : part.terms()) {
      t.add_term(w, Word{}, -c);
      t.add_term(Word{}, w, -c);
    }
    out.defect_terms[d] = t.terms().size();
    if (!t.is_zero()) {
      out.is_lie = false;
      out.failing_degrees.push_back(d);
    }
  }
  return out;
}

bool is_lie_element(const FreePoly& p) { return lie_check(p).is_lie; }

bool ree_grouplike(const FreePoly& z, std::size_t alphabet, std::size_t N) {
  if (z.constant_term() != 1) return false;
  for (std::size_t total = 2; total <= N; ++total)
    for (std::size_t a = 1; a < total; ++a)
      for (const auto& u : words_of_degree(alphabet, a))
        for (const auto& v : words_of_degree(alphabet, total - a)) {
          if (pairing(z, shuffle_words(u, v)) != z.coeff(u) * z.coeff(v)) return false;
        }
  return true;
}

Rational pairing(const FreePoly& p, const FreePoly& q) {
  Rational s(0);
  const FreePoly& small = p.size() <= q.size() ? p : q;
  const FreePoly& big = p.size() <= q.size() ? q : p;
  for (const auto& [w, c] : small.terms()) s += c * big.coeff(w);
  return s;
}

Rational pairing(const TensorPoly& t, const Word& u, const Word& v) { return t.coeff(u, v); }

}  // namespace hopfflow
