#include "cqed/fitting.hpp"

#include <cmath>
#include <stdexcept>

#include "cqed/units.hpp"

namespace cqed {

namespace {

Eigen::MatrixXd numeric_jacobian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const Eigen::VectorXd& x, const Eigen::VectorXd& r0) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(r0.size());
  Eigen::MatrixXd jac(m, n);
  for (int j = 0; j < n; ++j) {
    const double h = 1e-7 * std::abs(x(j)) + 1e-9;
    Eigen::VectorXd xp = x;
    xp(j) += h;
    jac.col(j) = (residual(xp) - r0) / h;
  }
  return jac;
}

}  // namespace

FitResult levenberg_least_squares(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& residual,
    const Eigen::VectorXd& x0, const LevenbergOptions& options) {
  FitResult result;
  Eigen::VectorXd x = x0;
  Eigen::VectorXd r = residual(x);
  double cost = 0.5 * r.squaredNorm();
  result.cost_history.push_back(cost);

  double lambda = options.initial_lambda;
  Eigen::MatrixXd jac = numeric_jacobian(residual, x, r);
  bool step_converged = false;

  for (int iter = 0; iter < options.max_iterations && !step_converged; ++iter) {
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    const Eigen::VectorXd diag = jtj.diagonal();
    if (diag.maxCoeff() <= 0.0) {
      throw std::runtime_error(
          "levenberg_least_squares: singular Jacobian, a parameter has no influence");
    }

    bool accepted = false;
    while (!accepted && lambda < 1e14) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal() += lambda * diag.cwiseMax(1e-30 * diag.maxCoeff());
      const Eigen::VectorXd delta = damped.ldlt().solve(-grad);
      if (!delta.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      const Eigen::VectorXd x_trial = x + delta;
      const Eigen::VectorXd r_trial = residual(x_trial);
      const double cost_trial = 0.5 * r_trial.squaredNorm();
      if (cost_trial < cost) {
        accepted = true;
        x = x_trial;
        r = r_trial;
        cost = cost_trial;
        result.cost_history.push_back(cost);
        ++result.iterations;
        lambda = std::max(lambda / 3.0, 1e-12);
        if (delta.norm() <= options.step_tolerance * (x.norm() + options.step_tolerance)) {
          step_converged = true;
        }
        jac = numeric_jacobian(residual, x, r);
      } else {
        lambda *= 4.0;
      }
    }
    if (!accepted) {
      break;  // damping exhausted, report best point
    }
  }

  const Eigen::VectorXd grad = jac.transpose() * r;
  result.parameters = x;
  result.residual_norm = r.norm();
  result.gradient_norm = grad.size() > 0 ? grad.cwiseAbs().maxCoeff() : 0.0;
  const bool grad_ok = result.gradient_norm <= options.gradient_tolerance * (1.0 + cost);
  result.converged = step_converged && grad_ok;
  result.message = result.converged
                       ? "converged"
                       : (step_converged ? "step converged but gradient not flat"
                                         : "stopped before convergence; best point returned");

  // Standard errors from the Gauss-Newton covariance sigma^2 (J^T J)^-1.
  const int m = static_cast<int>(r.size());
  const int n = static_cast<int>(x.size());
  result.standard_errors = Eigen::VectorXd::Zero(n);
  if (m > n) {
    const double sigma2 = r.squaredNorm() / (m - n);
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::MatrixXd cov = jtj.ldlt().solve(Eigen::MatrixXd::Identity(n, n));
    for (int j = 0; j < n; ++j) {
      const double v = sigma2 * cov(j, j);
      result.standard_errors(j) = v > 0.0 ? std::sqrt(v) : 0.0;
    }
  }
  return result;
}

SpectrumFitResult fit_spectrum(const SpectrumSeries& data, const SpectrumModel& initial,
                               const SpectrumFitOptions& options) {
  if (data.detunings.size() < 6 || data.detunings.size() != data.mean_photons.size()) {
    throw std::invalid_argument("fit_spectrum: need at least 6 consistent data points");
  }
  if (!(initial.g > 0.0) || !(initial.eta > 0.0) || !(initial.kappa > 0.0) ||
      !(initial.gamma > 0.0)) {
    throw std::invalid_argument("fit_spectrum: initial rates must be positive");
  }

  const bool with_remnant = initial.drive == DriveKind::Cavity;

  // Optimize in nu/2pi MHz units so all parameters are O(1)-O(10).
  std::vector<std::string> names = {"g_mhz", "delta_ac_mhz", "eta_mhz", "temperature_mhz"};
  Eigen::VectorXd x0(4 + (with_remnant ? 1 : 0) + (options.fit_scale ? 1 : 0));
  x0(0) = units::mhz_from_omega(initial.g);
  x0(1) = units::mhz_from_omega(initial.delta_ac);
  x0(2) = units::mhz_from_omega(initial.eta);
  x0(3) = units::mhz_from_omega(initial.temperature_scale);
  int idx = 4;
  if (with_remnant) {
    names.push_back("a_ec");
    x0(idx++) = initial.a_ec;
  }
  if (options.fit_scale) {
    names.push_back("scale");
    x0(idx++) = 1.0;
  }

  auto unpack = [&](const Eigen::VectorXd& x) {
    SpectrumModel m = initial;
    m.g = units::omega_from_mhz(std::abs(x(0)));
    m.delta_ac = units::omega_from_mhz(x(1));
    m.eta = options.fit_scale ? initial.eta : units::omega_from_mhz(std::abs(x(2)));
    m.temperature_scale = units::omega_from_mhz(std::abs(x(3)));
    m.a_ec = with_remnant ? std::abs(x(4)) : 0.0;
    const double scale = options.fit_scale ? x(x.size() - 1) : 1.0;
    return std::make_pair(m, scale);
  };

  auto residual = [&](const Eigen::VectorXd& x) {
    const auto [m, scale] = unpack(x);
    const SpectrumSeries model = composite_spectrum(m, data.detunings);
    Eigen::VectorXd r(data.detunings.size());
    for (std::size_t i = 0; i < data.detunings.size(); ++i) {
      r(i) = scale * model.mean_photons[i] - data.mean_photons[i];
    }
    return r;
  };

  FitResult stats = levenberg_least_squares(residual, x0, options.optimizer);

  // A fit with collapsed normal modes (g below kappa) is a known spurious
  // minimum; retry once from twice the initial coupling.
  if (units::omega_from_mhz(std::abs(stats.parameters(0))) < initial.kappa) {
    Eigen::VectorXd x_retry = x0;
    x_retry(0) = 2.0 * x0(0);
    FitResult retry = levenberg_least_squares(residual, x_retry, options.optimizer);
    if (retry.residual_norm < stats.residual_norm) {
      stats = retry;
    }
  }

  stats.parameter_names = names;
  SpectrumFitResult out;
  std::tie(out.model, out.scale) = unpack(stats.parameters);
  out.stats = std::move(stats);
  return out;
}

double eval_longtime_model(const LongTimeFit& params, double tau) {
  if (tau < 0.0) {
    throw std::invalid_argument("eval_longtime_model: tau must be non-negative");
  }
  return params.a_coherent * std::exp(-tau / params.tau_coherent) *
             std::sin(units::kTwoPi * params.f_coherent * tau) +
         params.a_incoherent * std::exp(-tau / params.tau_incoherent) + params.offset;
}

std::pair<LongTimeFit, FitResult> fit_longtime(const CorrelationSeries& data,
                                               const LongTimeFit& initial,
                                               const LevenbergOptions& options) {
  if (data.taus.size() < 8 || data.taus.size() != data.values.size()) {
    throw std::invalid_argument("fit_longtime: need at least 8 consistent data points");
  }
  if (data.taus.front() < 0.0) {
    throw std::invalid_argument("fit_longtime: delays must be non-negative");
  }
  if (!(initial.f_coherent > 0.0) || !(initial.tau_coherent > 0.0) ||
      !(initial.tau_incoherent > 0.0)) {
    throw std::invalid_argument("fit_longtime: initial f_c and decay times must be positive");
  }
  const double span = data.taus.back() - data.taus.front();
  if (span * initial.f_coherent < 2.0) {
    throw std::invalid_argument(
        "fit_longtime: data must cover at least two periods of the initial f_c");
  }

  // Scaled units: times in us, frequency in MHz.
  Eigen::VectorXd x0(6);
  x0 << initial.a_coherent, units::us_from_seconds(initial.tau_coherent),
      initial.f_coherent / 1e6, initial.a_incoherent,
      units::us_from_seconds(initial.tau_incoherent), initial.offset;

  auto unpack = [](const Eigen::VectorXd& x) {
    LongTimeFit p;
    p.a_coherent = x(0);
    p.tau_coherent = units::seconds_from_us(std::abs(x(1)));
    p.f_coherent = std::abs(x(2)) * 1e6;
    p.a_incoherent = x(3);
    p.tau_incoherent = units::seconds_from_us(std::abs(x(4)));
    p.offset = x(5);
    return p;
  };

  auto residual = [&](const Eigen::VectorXd& x) {
    const LongTimeFit p = unpack(x);
    Eigen::VectorXd r(data.taus.size());
    for (std::size_t i = 0; i < data.taus.size(); ++i) {
      r(i) = eval_longtime_model(p, data.taus[i]) - data.values[i];
    }
    return r;
  };

  FitResult stats = levenberg_least_squares(residual, x0, options);
  stats.parameter_names = {"a_coherent", "tau_coherent_us", "f_coherent_mhz",
                           "a_incoherent", "tau_incoherent_us", "offset"};
  return {unpack(stats.parameters), std::move(stats)};
}

}  // namespace cqed
