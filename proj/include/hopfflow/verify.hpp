#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hopfflow/rational.hpp"

namespace hopfflow {

struct Check {
  std::string name;
  // Short name of the identity being checked.
  std::string ref;
  bool pass = false;
  double residual = 0;
};

struct VerifyConfig {
  unsigned order = 4;
  Rational theta = 1;
  std::uint64_t seed = 0;
  unsigned trials = 100;
  // rb: riemann, summation, jackson, projection, triangular or all
  std::string instance = "all";
  // spitzer: classical, nc, bohnenblust, nc-bohnenblust, lam or all
  std::string variant = "all";
};

// cbhd, faadibruno, idempotents, magnus, rb, riccati, spitzer
const std::vector<std::string>& verify_topics();
// Checks of one topic, sorted by name. Throws UsageError on a bad topic,
// instance, variant or order.
std::vector<Check> verify_topic(const std::string& topic, const VerifyConfig& cfg);

}  // namespace hopfflow
