#pragma once

#include <vector>

#include "hopfflow/rational.hpp"

namespace hopfflow {

// Ordered positive parts summing to n, in lexicographic order.
std::vector<std::vector<unsigned>> compositions(unsigned n);
// Unordered set partitions of {0..n-1}; blocks sorted, listed by first element.
std::vector<std::vector<std::vector<unsigned>>> set_partitions(unsigned n);
// Integer partitions of n into exactly k parts, as multiplicity vectors m[1..n]
// (m[i] = number of parts equal to i).
std::vector<std::vector<unsigned>> partitions_exact(unsigned n, unsigned k);
// B_0..B_n with B_1 = −1/2, from Σ_{k≤n} binom(n+1,k) B_k = 0.
std::vector<Rational> bernoulli_numbers(unsigned n);

}  // namespace hopfflow
