#pragma once

#include <string>
#include <vector>

#include "cqed/correlations.hpp"

// n-photon blockade certification from photon statistics: the strict
// truncation conditions, the factorial-moment inequalities with margins,
// and the per-bin comparison against a Poisson reference of equal mean.

namespace cqed {

struct StrictFlags {
  bool truncated = false;  // P(m) = 0 for all m > n (tolerance 1e-10)
  bool populated = false;  // P(n) != 0

  bool pass() const { return truncated && populated; }
};

struct DistributionCheck {
  int m = 0;
  bool pass = false;  // P(m) < Poisson(m) for m > n; P(n) >= Poisson(n)
};

struct BlockadeReport {
  int order = 0;  // n under test
  double mean = 0.0;
  double g_n = 0.0;
  double g_np1 = 0.0;
  bool strict_pass = false;
  bool inequality_pass = false;
  double margin_upper = 0.0;  // g_np1 - (1 - mean); pass when negative
  double margin_lower = 0.0;  // g_n - (1 - mean^2/2); pass when non-negative
  std::vector<DistributionCheck> distribution_check;
  std::vector<std::string> warnings;
};

// Strict blockade: P(m) = 0 for m > n and P(n) != 0, tolerance 1e-10.
StrictFlags certify_strict(const PhotonDistribution& p, int n);

// The sufficient inequalities g^(n+1) < 1 - <m> and g^(n) >= 1 - <m>^2/2
// with their margins; emits validity warnings instead of failing when the
// small-mean regime is left.
BlockadeReport certify_inequalities(double g_n, double g_np1, double mean, int n);

// (P(n) - Poisson(n)) / Poisson(n) up to the last bin where the Poisson
// reference exceeds 1e-15.
std::vector<double> relative_deviation(const PhotonDistribution& p, double mean);

// Full pipeline: steady state -> photon distribution -> factorial moments ->
// certification report including strict and per-bin distribution checks.
BlockadeReport certify_from_params(const SystemParams& params, int n);

}  // namespace cqed
