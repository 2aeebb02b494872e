#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cqed/correlations.hpp"
#include "cqed/units.hpp"

using namespace cqed;
using units::omega_from_mhz;
using units::seconds_from_ns;
using units::seconds_from_us;

namespace {

SystemParams paper_params(DriveKind drive, double eta_mhz, double delta_c_mhz, int n_max = 12) {
  SystemParams p;
  p.g = omega_from_mhz(16.38);
  p.kappa = omega_from_mhz(2.0);
  p.gamma = omega_from_mhz(3.0);
  p.delta_c = omega_from_mhz(delta_c_mhz);
  p.delta_a = p.delta_c;  // delta_ac = 0
  p.drive = drive;
  p.eta = omega_from_mhz(eta_mhz);
  p.dims = make_dims(n_max + 1);
  return p;
}

SystemParams empty_cavity_params(double eta_mhz, int n_max = 9) {
  SystemParams p;
  p.g = 0.0;
  p.kappa = omega_from_mhz(2.0);
  p.gamma = omega_from_mhz(3.0);
  p.drive = DriveKind::Cavity;
  p.eta = omega_from_mhz(eta_mhz);
  p.dims = make_dims(n_max + 1);
  return p;
}

}  // namespace

TEST_CASE("driven empty cavity is coherent: g2 = g3 = 1") {
  const auto p = empty_cavity_params(0.55);
  const std::vector<double> taus = {0.0, seconds_from_ns(10.0), seconds_from_ns(50.0),
                                    seconds_from_ns(200.0), seconds_from_ns(640.0)};
  const auto series = g2(p, taus);
  for (double v : series.values) {
    CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK(g3(p, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(g3(p, seconds_from_ns(20.0), seconds_from_ns(35.0)) ==
        doctest::Approx(1.0).epsilon(1e-8));

  const auto flat = g3_zero_tau(p, {seconds_from_ns(-50.0), 0.0, seconds_from_ns(50.0)});
  for (double v : flat.values) {
    CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("zero mean photon number rejects normalization") {
  auto p = paper_params(DriveKind::None, 0.0, 18.0, 5);
  CHECK_THROWS_AS(g2(p, {0.0}), std::runtime_error);

  // Atom drive with g = 0 never populates the cavity.
  auto decoupled = paper_params(DriveKind::Atom, 0.55, 0.0, 5);
  decoupled.g = 0.0;
  CHECK_THROWS_AS(g2(decoupled, {0.0}), std::runtime_error);
}

TEST_CASE("delay grid validation") {
  const auto p = empty_cavity_params(0.55, 5);
  CHECK_THROWS_AS(g2(p, {}), std::invalid_argument);
  CHECK_THROWS_AS(g2(p, {seconds_from_ns(10.0), 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(g3(p, -1e-9, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(g3_diag(p, {seconds_from_ns(-10.0), 0.0}), std::invalid_argument);
}

TEST_CASE("first-manifold atom drive: blockade dip, rise, and vacuum Rabi beat") {
  const auto p = paper_params(DriveKind::Atom, 0.55, 18.0);
  const auto taus = linear_grid(seconds_from_ns(-640.0), seconds_from_ns(640.0),
                                seconds_from_ns(1.0));
  const auto series = g2(p, taus);
  const int zero = 640;
  REQUIRE(series.taus[zero] == 0.0);

  // Strong antibunching, then recovery toward the uncorrelated value.
  CHECK(series.values[zero] < 0.1);
  CHECK(series.values[zero + 32] > series.values[zero]);
  CHECK(series.values.back() == doctest::Approx(1.0).epsilon(0.05));

  // Symmetric extension.
  CHECK(series.values[zero - 100] == doctest::Approx(series.values[zero + 100]).epsilon(1e-12));

  // Dominant beat within 5% of twice the coupling.
  const double two_g_hz = 2.0 * p.g / units::kTwoPi;
  std::vector<double> t(series.taus.begin() + zero, series.taus.begin() + zero + 201);
  std::vector<double> v(series.values.begin() + zero, series.values.begin() + zero + 201);
  const double f = dominant_oscillation_frequency(t, v, 0.5 * two_g_hz, 1.5 * two_g_hz);
  CHECK(std::abs(f - two_g_hz) < 0.05 * two_g_hz);

  // |g2 - 1| decays on the excited dressed-state lifetime scale, factor 2.
  const double dev0 = std::abs(series.values[zero] - 1.0);
  double efold = 0.0;
  for (int i = zero; i < static_cast<int>(series.values.size()); ++i) {
    if (std::abs(series.values[i] - 1.0) < dev0 / std::exp(1.0)) {
      efold = series.taus[i];
      break;
    }
  }
  const double lifetime = 2.0 / (p.kappa + p.gamma);
  CHECK(efold > 0.5 * lifetime);
  CHECK(efold < 2.0 * lifetime);
}

TEST_CASE("regression and factorial moments agree at zero delay") {
  for (auto [drive, eta] : {std::pair{DriveKind::Atom, 1.6}, {DriveKind::Cavity, 1.1}}) {
    const auto p = paper_params(drive, eta, 12.0);
    const auto dist = photon_distribution(steady_state(liouvillian(p)));
    const auto series = g2(p, {0.0});
    CHECK(std::abs(series.values[0] - gk_from_distribution(dist, 2)) < 1e-8);
    CHECK(std::abs(g3(p, 0.0, 0.0) - gk_from_distribution(dist, 3)) < 1e-8);
  }
}

TEST_CASE("second-manifold atom drive violates the Cauchy-Schwarz bound") {
  // Two-photon resonance neighbourhood: the conditional evolution peaks a
  // coupling period after the trigger photon instead of at zero delay.
  const auto p = paper_params(DriveKind::Atom, 1.6, 12.0);
  const auto taus = linear_grid(0.0, seconds_from_ns(150.0), seconds_from_ns(1.0));
  const auto series = g2(p, taus);
  int imax = 0;
  for (int i = 0; i < static_cast<int>(series.values.size()); ++i) {
    if (series.values[i] > series.values[imax]) {
      imax = i;
    }
  }
  CHECK(series.values[imax] > series.values[0]);
  CHECK(series.taus[imax] >= seconds_from_ns(20.0));
  CHECK(series.taus[imax] <= seconds_from_ns(60.0));
}

TEST_CASE("g3 cut at tau1 = 0: branches, continuity, asymptote") {
  const auto p = paper_params(DriveKind::Atom, 1.6, 12.0);

  auto taus = linear_grid(seconds_from_ns(-300.0), seconds_from_ns(500.0), seconds_from_ns(1.0));
  const auto tail = linear_grid(seconds_from_ns(510.0), seconds_from_us(2.0),
                                seconds_from_ns(10.0));
  taus.insert(taus.end(), tail.begin(), tail.end());
  const auto series = g3_zero_tau(p, taus);

  // The grid point at zero must agree with the direct evaluation.
  const int zero = 300;
  REQUIRE(series.taus[zero] == 0.0);
  CHECK(series.values[zero] == doctest::Approx(g3(p, 0.0, 0.0)).epsilon(1e-10));

  // Large positive delay approaches g2(0) * g2(tau), not 1.
  const auto g2_series = g2(p, {0.0, seconds_from_us(2.0)});
  const double expected = g2_series.values[0] * g2_series.values[1];
  CHECK(std::abs(series.values.back() - expected) < 1e-3);
  CHECK(std::abs(expected - 1.0) > 0.1);  // the asymptote is distinctly not 1

  // Negative branch carries second-manifold frequency content (around
  // 2 sqrt(2) g) that the positive branch lacks.
  std::vector<double> tn, vn, tp, vp;
  for (std::size_t i = 0; i < series.taus.size(); ++i) {
    if (series.taus[i] <= 0.0) {
      tn.push_back(-series.taus[i]);
      vn.push_back(series.values[i]);
    } else if (series.taus[i] <= seconds_from_ns(300.0)) {
      tp.push_back(series.taus[i]);
      vp.push_back(series.values[i]);
    }
  }
  std::reverse(tn.begin(), tn.end());
  std::reverse(vn.begin(), vn.end());
  const double band_lo = 42e6, band_hi = 52e6;
  auto band_power = [&](const std::vector<double>& t, const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= v.size();
    double peak = 0.0;
    for (double f = band_lo; f <= band_hi; f += 0.2e6) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        acc += (v[i] - mean) * std::exp(Complex(0.0, -units::kTwoPi * f * t[i]));
      }
      peak = std::max(peak, std::norm(acc));
    }
    return peak;
  };
  CHECK(band_power(tn, vn) > 10.0 * band_power(tp, vp));
}

TEST_CASE("g3 diagonal equals the two-argument form and settles to 1") {
  const auto p8 = paper_params(DriveKind::Atom, 1.6, 12.0, 8);
  const auto grid = linear_grid(0.0, seconds_from_ns(100.0), seconds_from_ns(25.0));
  const auto diag = g3_diag(p8, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(diag.values[i] == doctest::Approx(g3(p8, grid[i], grid[i])).epsilon(1e-10));
  }

  const auto p = paper_params(DriveKind::Atom, 1.6, 12.0);
  const auto series = g3_diag(p, long_time_grid());
  CHECK(series.values[0] == doctest::Approx(g3(p, 0.0, 0.0)).epsilon(1e-10));
  const auto avg = windowed_average(series, seconds_from_us(1.0), seconds_from_us(4.0));
  CHECK(avg.mean == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("photon distribution from pure states") {
  const auto dims = make_dims(6);
  const auto vacuum = pure_state(basis_state(dims, 0, 0), dims);
  const auto p0 = photon_distribution(vacuum);
  CHECK(p0.probs[0] == doctest::Approx(1.0));
  CHECK(p0.mean == doctest::Approx(0.0));

  const auto one_excited = pure_state(basis_state(dims, 1, 1), dims);
  const auto p1 = photon_distribution(one_excited);
  CHECK(p1.probs[1] == doctest::Approx(1.0));
  CHECK(p1.mean == doctest::Approx(1.0));
}

TEST_CASE("factorial moments from distributions") {
  PhotonDistribution poissonish = poisson_reference(0.3, 24);
  CHECK(gk_from_distribution(poissonish, 2) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(gk_from_distribution(poissonish, 3) == doctest::Approx(1.0).epsilon(1e-10));

  PhotonDistribution single;
  single.probs = {0.0, 1.0};
  single.mean = 1.0;
  CHECK(gk_from_distribution(single, 2) == doctest::Approx(0.0));

  PhotonDistribution p;
  p.probs = {0.90, 0.05, 0.05};
  p.mean = 0.05 + 2 * 0.05;
  CHECK(gk_from_distribution(p, 2) == doctest::Approx(0.1 / (0.15 * 0.15)).epsilon(1e-12));

  CHECK_THROWS_AS(gk_from_distribution(p, 1), std::invalid_argument);
  PhotonDistribution empty;
  empty.probs = {1.0};
  empty.mean = 0.0;
  CHECK_THROWS_AS(gk_from_distribution(empty, 2), std::runtime_error);
}

TEST_CASE("poisson reference") {
  const auto zero = poisson_reference(0.0, 8);
  CHECK(zero.probs[0] == doctest::Approx(1.0));

  const auto p = poisson_reference(0.1, 14);
  CHECK(p.probs[1] == doctest::Approx(0.1 * std::exp(-0.1)).epsilon(1e-12));

  // Truncation loss is negligible once N_max >= mean + 10 sqrt(mean).
  const auto wide = poisson_reference(2.0, 17);
  double total = 0.0;
  for (double q : wide.probs) total += q;
  CHECK(std::abs(total - 1.0) <= 1e-10);

  CHECK_THROWS_AS(poisson_reference(-0.5, 8), std::invalid_argument);
}

TEST_CASE("windowed average") {
  CorrelationSeries series;
  series.taus = {1e-6, 2e-6, 3e-6, 4e-6};
  series.values = {2.0, 2.0, 2.0, 2.0};
  const auto constant = windowed_average(series, 1e-6, 4e-6);
  CHECK(constant.mean == doctest::Approx(2.0));
  CHECK(constant.standard_error == doctest::Approx(0.0));
  CHECK(constant.count == 4);

  const auto single = windowed_average(series, 2e-6, 2e-6);
  CHECK(single.mean == doctest::Approx(2.0));
  CHECK(single.count == 1);

  CHECK_THROWS_AS(windowed_average(series, 5e-6, 6e-6), std::invalid_argument);
  CHECK_THROWS_AS(windowed_average(series, 3e-6, 2e-6), std::invalid_argument);
}

TEST_CASE("dominant frequency estimator on synthetic data") {
  const double f_true = 32.76e6;
  auto taus = linear_grid(0.0, seconds_from_ns(300.0), seconds_from_ns(1.0));
  std::vector<double> values(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double t = taus[i];
    values[i] = 0.2 * std::exp(-t / 64e-9) * std::sin(units::kTwoPi * f_true * t) +
                (1.0 - std::exp(-t / 80e-9)) + 0.5;
  }
  const double f = dominant_oscillation_frequency(taus, values, 10e6, 80e6);
  CHECK(f == doctest::Approx(f_true).epsilon(0.01));

  std::vector<double> flat(taus.size(), 1.0);
  CHECK_THROWS_AS(dominant_oscillation_frequency(taus, flat, 10e6, 80e6), std::runtime_error);
}

TEST_CASE("grid builders") {
  const auto grid = linear_grid(0.0, 1e-6, 1e-7);
  REQUIRE(grid.size() == 11);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == doctest::Approx(1e-6));

  CHECK(default_dynamics_grid().size() == 1001);
  const auto lt = long_time_grid();
  CHECK(lt.size() == 501 + 350);
  CHECK(lt.back() == doctest::Approx(4e-6));
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, -1.0), std::invalid_argument);
}
