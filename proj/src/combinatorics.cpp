#include "hopfflow/combinatorics.hpp"

#include <functional>

namespace hopfflow {

std::vector<std::vector<unsigned>> compositions(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned)> rec = [&](unsigned left) {
    if (left == 0) {
      if (!cur.empty()) out.push_back(cur);
      return;
    }
    for (unsigned p = 1; p <= left; ++p) {
      cur.push_back(p);
      rec(left - p);
      cur.pop_back();
    }
  };
  rec(n);
  return out;
}

std::vector<std::vector<std::vector<unsigned>>> set_partitions(unsigned n) {
  std::vector<std::vector<std::vector<unsigned>>> out;
  std::vector<std::vector<unsigned>> blocks;
  std::function<void(unsigned)> rec = [&](unsigned i) {
    if (i == n) {
      out.push_back(blocks);
      return;
    }
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      blocks[k].push_back(i);
      rec(i + 1);
      blocks[k].pop_back();
    }
    blocks.push_back({i});
    rec(i + 1);
    blocks.pop_back();
  };
  if (n == 0) return {{}};
  rec(0);
  return out;
}

std::vector<std::vector<unsigned>> partitions_exact(unsigned n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> m(n + 1, 0);
  // Parts chosen in non-increasing order.
  std::function<void(unsigned, unsigned, unsigned)> rec = [&](unsigned left, unsigned parts, unsigned maxpart) {
    if (parts == 0) {
      if (left == 0) out.push_back(m);
      return;
    }
    for (unsigned p = std::min(left, maxpart); p >= 1; --p) {
      if (p * parts < left) break;
      ++m[p];
      rec(left - p, parts - 1, p);
      --m[p];
    }
  };
  rec(n, k, n);
  return out;
}

std::vector<Rational> bernoulli_numbers(unsigned n) {
  std::vector<Rational> B(n + 1);
  B[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    Rational s = 0;
    for (unsigned k = 0; k < m; ++k) s += binomial(m + 1, k) * B[k];
    B[m] = -s / Rational(m + 1);
  }
  return B;
}

}  // namespace hopfflow
