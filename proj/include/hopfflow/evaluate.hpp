#pragma once

#include <map>
#include <vector>

#include "hopfflow/freetensor.hpp"

namespace hopfflow {

// Substitutes letters of a FreePoly by elements of an associative algebra.
// `scale(c, v)` returns c·v. Prefix products are shared between words.
template <class V, class Scale>
V evaluate(const FreePoly& p, const std::vector<V>& letters, const V& one, const V& zero, Scale scale) {
  std::map<Word, V> prefix;
  prefix.emplace(Word{}, one);
  auto product = [&](const Word& w, auto&& self) -> const V& {
    auto it = prefix.find(w);
    if (it != prefix.end()) return it->second;
    const V& head = self(w.sub(0, w.size() - 1), self);
    Letter l = w[w.size() - 1];
    if (l >= letters.size()) throw std::out_of_range("evaluate: letter without substitution");
    return prefix.emplace(w, head * letters[l]).first->second;
  };
  V acc = zero;
  for (const auto& [w, c] : p.terms()) acc = acc + scale(c, product(w, product));
  return acc;
}

}  // namespace hopfflow
