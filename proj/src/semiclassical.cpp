#include "cqed/semiclassical.hpp"

#include <cmath>
#include <stdexcept>

namespace cqed {

namespace {

constexpr int kThermalNodes = 16;

double bare_mean_photons(const SpectrumModel& model, double delta_c, double delta_a) {
  const Complex dt_a(delta_a, model.gamma);
  const Complex dt_c(delta_c, model.kappa);
  const double denom = std::norm(dt_c * dt_a - model.g * model.g);
  if (model.drive == DriveKind::Cavity) {
    return model.eta * model.eta * std::norm(dt_a) / denom;
  }
  return model.eta * model.eta * model.g * model.g / denom;
}

void require_rates(const SpectrumModel& model) {
  if (model.g < 0.0 || model.kappa < 0.0 || model.gamma < 0.0 || model.eta < 0.0 ||
      model.temperature_scale < 0.0 || model.a_ec < 0.0) {
    throw std::invalid_argument("SpectrumModel: rates and amplitudes must be non-negative");
  }
  if (model.drive == DriveKind::None) {
    throw std::invalid_argument("SpectrumModel: spectrum requires a drive");
  }
}

}  // namespace

double mean_photons_cavity_drive(const SpectrumModel& model, double delta_c, double delta_a) {
  SpectrumModel m = model;
  m.drive = DriveKind::Cavity;
  require_rates(m);
  return bare_mean_photons(m, delta_c, delta_a);
}

double mean_photons_atom_drive(const SpectrumModel& model, double delta_c, double delta_a) {
  SpectrumModel m = model;
  m.drive = DriveKind::Atom;
  require_rates(m);
  return bare_mean_photons(m, delta_c, delta_a);
}

SpectrumSeries thermal_average_spectrum(const SpectrumModel& model,
                                        const std::vector<double>& delta_c_grid) {
  require_rates(model);
  SpectrumSeries series{delta_c_grid, std::vector<double>(delta_c_grid.size(), 0.0)};

  if (model.temperature_scale == 0.0) {
    for (std::size_t i = 0; i < delta_c_grid.size(); ++i) {
      const double delta_a = delta_c_grid[i] - model.delta_ac;
      series.mean_photons[i] = bare_mean_photons(model, delta_c_grid[i], delta_a);
    }
    return series;
  }

  const auto [nodes, weights] = gauss_laguerre(kThermalNodes);
  for (std::size_t i = 0; i < delta_c_grid.size(); ++i) {
    const double delta_a = delta_c_grid[i] - model.delta_ac;
    double acc = 0.0;
    for (int q = 0; q < kThermalNodes; ++q) {
      acc += weights[q] *
             bare_mean_photons(model, delta_c_grid[i], delta_a + nodes[q] * model.temperature_scale);
    }
    series.mean_photons[i] = acc;
  }
  return series;
}

double empty_cavity_remnant(double delta_c, double a_ec, double kappa) {
  if (a_ec < 0.0) {
    throw std::invalid_argument("empty_cavity_remnant: amplitude must be non-negative");
  }
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("empty_cavity_remnant: kappa must be positive");
  }
  const double x = delta_c / kappa;
  return a_ec / (1.0 + x * x);
}

SpectrumSeries composite_spectrum(const SpectrumModel& model,
                                  const std::vector<double>& delta_c_grid) {
  SpectrumSeries series = thermal_average_spectrum(model, delta_c_grid);
  if (model.drive == DriveKind::Cavity && model.a_ec > 0.0) {
    for (std::size_t i = 0; i < delta_c_grid.size(); ++i) {
      series.mean_photons[i] += empty_cavity_remnant(delta_c_grid[i], model.a_ec, model.kappa);
    }
  }
  return series;
}

std::pair<std::vector<double>, std::vector<double>> gauss_laguerre(int n) {
  if (n < 1) {
    throw std::invalid_argument("gauss_laguerre: need at least one node");
  }
  // Golub-Welsch on the Laguerre Jacobi matrix: diagonal 2k+1, off-diagonal k.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = 2.0 * k + 1.0;
    if (k + 1 < n) {
      jacobi(k, k + 1) = k + 1.0;
      jacobi(k + 1, k) = k + 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_laguerre: eigensolver failed");
  }
  std::vector<double> nodes(n), weights(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] = solver.eigenvalues()(k);
    const double first = solver.eigenvectors()(0, k);
    weights[k] = first * first;  // mu_0 = int_0^inf e^-x dx = 1
  }
  return {nodes, weights};
}

}  // namespace cqed
