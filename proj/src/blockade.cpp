#include "cqed/blockade.hpp"

#include <cmath>
#include <stdexcept>

namespace cqed {

namespace {

constexpr double kStrictTolerance = 1e-10;
constexpr double kPoissonFloor = 1e-15;

void attach_distribution_checks(BlockadeReport& report, const PhotonDistribution& p) {
  const auto poisson = poisson_reference(report.mean, static_cast<int>(p.probs.size()));
  for (std::size_t m = report.order; m < p.probs.size(); ++m) {
    if (poisson.probs[m] <= kPoissonFloor) {
      break;
    }
    const bool pass = (static_cast<int>(m) == report.order)
                          ? p.probs[m] >= poisson.probs[m]
                          : p.probs[m] < poisson.probs[m];
    report.distribution_check.push_back({static_cast<int>(m), pass});
  }
  for (std::size_t m = 0; m + 1 < p.probs.size() && static_cast<int>(m) <= report.order; ++m) {
    if (p.probs[m + 1] > 0.2 * p.probs[m]) {
      report.warnings.push_back("P(" + std::to_string(m + 1) + ") is not small against P(" +
                                std::to_string(m) + "); inequality derivation assumes P(m) >> P(m+1)");
      break;
    }
  }
}

}  // namespace

StrictFlags certify_strict(const PhotonDistribution& p, int n) {
  if (n < 1) {
    throw std::invalid_argument("certify_strict: blockade order must be at least 1");
  }
  StrictFlags flags;
  flags.truncated = true;
  for (std::size_t m = n + 1; m < p.probs.size(); ++m) {
    if (std::abs(p.probs[m]) > kStrictTolerance) {
      flags.truncated = false;
      break;
    }
  }
  flags.populated =
      n < static_cast<int>(p.probs.size()) && std::abs(p.probs[n]) > kStrictTolerance;
  return flags;
}

BlockadeReport certify_inequalities(double g_n, double g_np1, double mean, int n) {
  if (mean < 0.0) {
    throw std::invalid_argument("certify_inequalities: mean must be non-negative");
  }
  if (n < 1) {
    throw std::invalid_argument("certify_inequalities: blockade order must be at least 1");
  }
  BlockadeReport report;
  report.order = n;
  report.mean = mean;
  report.g_n = g_n;
  report.g_np1 = g_np1;
  report.margin_upper = g_np1 - (1.0 - mean);
  report.margin_lower = g_n - (1.0 - 0.5 * mean * mean);
  report.inequality_pass = report.margin_upper < 0.0 && report.margin_lower >= 0.0;
  if (mean >= 0.1) {
    report.warnings.push_back(
        "mean photon number is not small; the inequality derivation assumes <m> << 1");
  }
  return report;
}

std::vector<double> relative_deviation(const PhotonDistribution& p, double mean) {
  if (!(mean > 0.0)) {
    throw std::invalid_argument("relative_deviation: mean must be positive");
  }
  const auto poisson = poisson_reference(mean, static_cast<int>(p.probs.size()));
  std::vector<double> deviation;
  for (std::size_t n = 0; n < p.probs.size(); ++n) {
    if (poisson.probs[n] <= kPoissonFloor) {
      break;
    }
    deviation.push_back((p.probs[n] - poisson.probs[n]) / poisson.probs[n]);
  }
  return deviation;
}

BlockadeReport certify_from_params(const SystemParams& params, int n) {
  if (n < 1) {
    throw std::invalid_argument("certify_from_params: blockade order must be at least 1");
  }
  if (n + 1 > params.dims.n_max()) {
    throw std::invalid_argument("certify_from_params: order n+1 exceeds the truncation");
  }
  const auto liouville = liouvillian(params);
  const auto rho = steady_state(liouville);
  const auto dist = photon_distribution(rho);

  const double g_n = n >= 2 ? gk_from_distribution(dist, n) : 1.0;
  const double g_np1 = gk_from_distribution(dist, n + 1);

  BlockadeReport report = certify_inequalities(g_n, g_np1, dist.mean, n);
  report.strict_pass = certify_strict(dist, n).pass();
  attach_distribution_checks(report, dist);
  return report;
}

}  // namespace cqed
