#pragma once

#include <vector>

#include "cqed/lindblad.hpp"

// Photon correlation functions of the cavity output via the quantum
// regression theorem, and photon-number statistics of the reduced cavity
// state. Delay grids are monotone and given in seconds.

namespace cqed {

struct CorrelationSeries {
  std::vector<double> taus;    // seconds
  std::vector<double> values;  // dimensionless, >= 0
  int order = 2;               // k in g^(k)
  double normalization = 0.0;  // <n>^k used to normalize
};

struct PhotonDistribution {
  std::vector<double> probs;  // indexed by photon number 0..N_max
  double mean = 0.0;
};

struct WindowedAverage {
  double mean = 0.0;
  double standard_error = 0.0;
  int count = 0;
};

// <n> of the steady state reached under the given parameters.
double steady_mean_photons(const SystemParams& p);

// g2(tau) = tr(n exp(L tau) (a rho_ss a+)) / <n>^2; negative delays use the
// symmetric extension g2(-tau) = g2(tau).
CorrelationSeries g2(const SystemParams& p, const std::vector<double>& taus);

// g3(tau1, tau2) = tr(n exp(L tau2) [a exp(L tau1) (a rho_ss a+) a+]) / <n>^3
// for tau1, tau2 >= 0.
double g3(const SystemParams& p, double tau1, double tau2);

// The cut g3(0, tau). For tau < 0 the photon pair is detected last:
// tr(a+^2 a^2 exp(L |tau|) (a rho_ss a+)) / <n>^3 (stationarity reindexing,
// never backward propagation).
CorrelationSeries g3_zero_tau(const SystemParams& p, const std::vector<double>& taus);

// The diagonal g3(tau, tau) for tau >= 0.
CorrelationSeries g3_diag(const SystemParams& p, const std::vector<double>& taus);

// P(n) = sum_s <s,n| rho |s,n> over the atom states.
PhotonDistribution photon_distribution(const DensityMatrix& rho);

// Factorial-moment correlation g^(k) = sum_m m!/(m-k)! P(m) / <m>^k, k >= 2.
double gk_from_distribution(const PhotonDistribution& p, int k);

// Truncated Poisson distribution with the given mean on fock_dim bins;
// not renormalized, so the truncation must hold the full mass.
PhotonDistribution poisson_reference(double mean, int fock_dim);

// Mean and standard error of the samples with t_start <= tau <= t_end.
WindowedAverage windowed_average(const CorrelationSeries& series, double t_start, double t_end);

// Frequency (Hz) of the strongest spectral component of a detrended,
// Hann-windowed series within [f_min, f_max].
double dominant_oscillation_frequency(const std::vector<double>& taus,
                                      const std::vector<double>& values, double f_min,
                                      double f_max);

// start, start+step, ... through stop (inclusive up to rounding).
std::vector<double> linear_grid(double start, double stop, double step);

// -500 ns .. +500 ns at the 1 ns timing resolution.
std::vector<double> default_dynamics_grid();

// 0 .. 500 ns at 1 ns, then 10 ns steps out to 4 us for long-time averages.
std::vector<double> long_time_grid();

}  // namespace cqed
