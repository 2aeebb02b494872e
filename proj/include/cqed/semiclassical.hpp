#pragma once

#include <utility>
#include <vector>

#include "cqed/jcmodel.hpp"

// Analytic weak-drive transmission spectra: steady-state mean photon number
// from the semiclassical equations of motion, thermal broadening by
// averaging over atomic detuning offsets, and the empty-cavity remnant line.

namespace cqed {

// All rates and detunings in rad/s. temperature_scale is the decay constant
// of the one-sided exponential distribution of atomic detuning offsets
// (offsets add to delta_a); a_ec is the dimensionless remnant amplitude.
struct SpectrumModel {
  double g = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
  double delta_ac = 0.0;  // omega_a - omega_c
  double eta = 0.0;
  double temperature_scale = 0.0;
  double a_ec = 0.0;
  DriveKind drive = DriveKind::Cavity;
};

struct SpectrumSeries {
  std::vector<double> detunings;     // probe detuning delta_c, rad/s
  std::vector<double> mean_photons;  // <a+ a>, dimensionless
};

// <a+ a>_c = eta_c^2 |Dt_a|^2 / |Dt_c Dt_a - g^2|^2 with the complex
// detunings Dt_a = delta_a + i gamma, Dt_c = delta_c + i kappa.
double mean_photons_cavity_drive(const SpectrumModel& model, double delta_c, double delta_a);

// <a+ a>_a = eta_a^2 g^2 / |Dt_c Dt_a - g^2|^2.
double mean_photons_atom_drive(const SpectrumModel& model, double delta_c, double delta_a);

// Spectrum averaged over thermal atomic detuning offsets by 16-node
// Gauss-Laguerre quadrature; temperature_scale = 0 reduces to the bare
// formula. delta_a tracks the probe as delta_c - delta_ac.
SpectrumSeries thermal_average_spectrum(const SpectrumModel& model,
                                        const std::vector<double>& delta_c_grid);

// Lorentzian remnant A_ec / (1 + (delta_c/kappa)^2); FWHM 2 kappa.
double empty_cavity_remnant(double delta_c, double a_ec, double kappa);

// Thermal average plus, for cavity drive only, the empty-cavity remnant.
SpectrumSeries composite_spectrum(const SpectrumModel& model,
                                  const std::vector<double>& delta_c_grid);

// Nodes and weights for int_0^inf e^-x f(x) dx ~= sum w_i f(x_i).
std::pair<std::vector<double>, std::vector<double>> gauss_laguerre(int n);

}  // namespace cqed
