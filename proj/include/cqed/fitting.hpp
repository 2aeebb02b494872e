#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cqed/correlations.hpp"
#include "cqed/semiclassical.hpp"

// Least-squares fitting: a damped Gauss-Newton (Levenberg) core with a
// numerically differenced Jacobian, plus the two domain fits - transmission
// spectra and the long-time correlation decay model.

namespace cqed {

struct FitResult {
  Eigen::VectorXd parameters;
  Eigen::VectorXd standard_errors;  // Gauss-Newton covariance estimate
  double residual_norm = 0.0;       // ||r|| at the solution
  double gradient_norm = 0.0;       // ||J^T r||_inf at the solution
  bool converged = false;
  int iterations = 0;
  std::vector<double> cost_history;  // accepted 0.5*||r||^2 values
  std::vector<std::string> parameter_names;
  std::string message;
};

struct LevenbergOptions {
  int max_iterations = 500;
  double step_tolerance = 1e-10;      // relative step size for convergence
  double gradient_tolerance = 1e-8;   // scaled by (1 + cost)
  double initial_lambda = 1e-3;
};

// Minimizes 0.5*||residual(x)||^2. Throws std::runtime_error on a singular
// Jacobian (a parameter without influence on the residual).
FitResult levenberg_least_squares(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const Eigen::VectorXd& x0, const LevenbergOptions& options = {});

struct SpectrumFitOptions {
  // Fit an overall count-rate scale instead of eta (eta then stays fixed);
  // the two cannot float together because the spectrum is proportional to
  // scale * eta^2.
  bool fit_scale = false;
  LevenbergOptions optimizer;
};

struct SpectrumFitResult {
  SpectrumModel model;  // fitted parameters, kappa and gamma fixed
  double scale = 1.0;
  FitResult stats;
};

// Free parameters (g, delta_ac, eta, temperature_scale[, a_ec for cavity
// drive]) with kappa, gamma taken from the initial model. Requires at least
// six data points and positive initial g and eta. If the fit collapses to
// g < kappa it is restarted once from twice the initial g.
SpectrumFitResult fit_spectrum(const SpectrumSeries& data, const SpectrumModel& initial,
                               const SpectrumFitOptions& options = {});

// f(tau) = A_c exp(-tau/tau_c) sin(2 pi f_c tau) + A_i exp(-tau/tau_i) + c
struct LongTimeFit {
  double a_coherent = 0.0;
  double tau_coherent = 1.0;  // seconds
  double f_coherent = 0.0;    // Hz
  double a_incoherent = 0.0;
  double tau_incoherent = 1.0;  // seconds
  double offset = 1.0;
};

double eval_longtime_model(const LongTimeFit& params, double tau);

// Fits all six parameters; the data must span at least two oscillation
// periods of the initial f_c guess.
std::pair<LongTimeFit, FitResult> fit_longtime(const CorrelationSeries& data,
                                               const LongTimeFit& initial,
                                               const LevenbergOptions& options = {});

}  // namespace cqed
