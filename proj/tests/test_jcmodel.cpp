#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqed/jcmodel.hpp"
#include "cqed/units.hpp"

using namespace cqed;
using units::omega_from_mhz;

namespace {

SystemParams paper_params(DriveKind drive, double eta_mhz, double delta_c_mhz,
                          double delta_ac_mhz = 0.0, int n_max = 12) {
  SystemParams p;
  p.g = omega_from_mhz(16.38);
  p.kappa = omega_from_mhz(2.0);
  p.gamma = omega_from_mhz(3.0);
  p.delta_c = omega_from_mhz(delta_c_mhz);
  p.delta_a = omega_from_mhz(delta_c_mhz - delta_ac_mhz);
  p.drive = drive;
  p.eta = omega_from_mhz(eta_mhz);
  p.dims = make_dims(n_max + 1);
  return p;
}

}  // namespace

TEST_CASE("hamiltonian is hermitian for all drive configurations") {
  for (auto drive : {DriveKind::None, DriveKind::Atom, DriveKind::Cavity}) {
    auto p = paper_params(drive, drive == DriveKind::None ? 0.0 : 0.55, 18.0, 3.0);
    const auto h = build_hamiltonian(p);
    CHECK((h.m - h.m.adjoint()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("resonant manifold splittings 2 sqrt(n) g") {
  auto p = paper_params(DriveKind::None, 0.0, 0.0);

  const auto [up1, low1] = dressed_states(p, 1);
  CHECK(up1.energy == doctest::Approx(p.g).epsilon(1e-12));
  CHECK(low1.energy == doctest::Approx(-p.g).epsilon(1e-12));

  const auto [up2, low2] = dressed_states(p, 2);
  CHECK(up2.energy == doctest::Approx(std::sqrt(2.0) * p.g).epsilon(1e-12));
  CHECK(low2.energy == doctest::Approx(-std::sqrt(2.0) * p.g).epsilon(1e-12));

  const auto [up3, low3] = dressed_states(p, 3);
  CHECK(up3.energy - low3.energy == doctest::Approx(2.0 * std::sqrt(3.0) * p.g).epsilon(1e-12));
}

TEST_CASE("dressed states match the closed form at zero detuning") {
  auto p = paper_params(DriveKind::None, 0.0, 0.0);
  const auto [upper, lower] = dressed_states(p, 1);

  Vector plus = (basis_state(p.dims, 0, 1) + basis_state(p.dims, 1, 0)) / std::sqrt(2.0);
  Vector minus = (basis_state(p.dims, 0, 1) - basis_state(p.dims, 1, 0)) / std::sqrt(2.0);
  CHECK(std::norm(plus.dot(upper.amplitudes)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::norm(minus.dot(lower.amplitudes)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(upper.amplitudes.norm() == doctest::Approx(1.0));

  CHECK_THROWS_AS(dressed_states(p, 0), std::invalid_argument);
  CHECK_THROWS_AS(dressed_states(p, p.dims.n_max() + 1), std::invalid_argument);
}

TEST_CASE("manifold energies at common detuning are n delta +- sqrt(n) g") {
  auto p = paper_params(DriveKind::None, 0.0, 5.0);  // delta_a = delta_c = 5 MHz
  const double delta = p.delta_c;
  for (int n = 1; n <= 4; ++n) {
    const auto [upper, lower] = dressed_states(p, n);
    const double split = std::sqrt(static_cast<double>(n)) * p.g;
    CHECK(std::abs(upper.energy - (n * delta + split)) < 1e-10 * p.g);
    CHECK(std::abs(lower.energy - (n * delta - split)) < 1e-10 * p.g);
  }
}

TEST_CASE("effective strengths: ground to first manifold") {
  auto atom = paper_params(DriveKind::Atom, 0.55, 0.0);
  const double eta = atom.eta;

  CHECK(effective_drive_strength(atom, {0, +1}, {1, +1}).eta_tilde ==
        doctest::Approx(std::sqrt(2.0) * eta).epsilon(1e-12));
  CHECK(effective_drive_strength(atom, {0, +1}, {1, -1}).eta_tilde ==
        doctest::Approx(-std::sqrt(2.0) * eta).epsilon(1e-12));

  auto cavity = paper_params(DriveKind::Cavity, 0.55, 0.0);
  CHECK(effective_drive_strength(cavity, {0, +1}, {1, +1}).eta_tilde ==
        doctest::Approx(std::sqrt(2.0) * cavity.eta).epsilon(1e-12));
  CHECK(effective_drive_strength(cavity, {0, +1}, {1, -1}).eta_tilde ==
        doctest::Approx(std::sqrt(2.0) * cavity.eta).epsilon(1e-12));
}

TEST_CASE("effective strengths: bosonic enhancement and suppression") {
  auto cavity = paper_params(DriveKind::Cavity, 1.1, 0.0);
  const double eta = cavity.eta;

  CHECK(effective_drive_strength(cavity, {1, +1}, {2, +1}).eta_tilde ==
        doctest::Approx((std::sqrt(2.0) + 1.0) * eta).epsilon(1e-12));
  CHECK(effective_drive_strength(cavity, {1, +1}, {2, -1}).eta_tilde ==
        doctest::Approx((std::sqrt(2.0) - 1.0) * eta).epsilon(1e-12));

  // Atom drive: equal magnitudes, sign of the upper state.
  auto atom = paper_params(DriveKind::Atom, 1.6, 0.0);
  for (int n = 1; n <= 3; ++n) {
    for (int s_from : {+1, -1}) {
      for (int s_to : {+1, -1}) {
        const auto t = effective_drive_strength(atom, {n, s_from}, {n + 1, s_to});
        CHECK(t.eta_tilde == doctest::Approx(s_to * atom.eta).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("closed forms reproduced for every manifold step") {
  auto cavity = paper_params(DriveKind::Cavity, 0.7, 0.0, 0.0, 8);
  const double eta = cavity.eta;
  for (int n = 1; n + 1 <= cavity.dims.n_max(); ++n) {
    const double enhanced = (std::sqrt(n + 1.0) + std::sqrt(static_cast<double>(n))) * eta;
    const double suppressed = (std::sqrt(n + 1.0) - std::sqrt(static_cast<double>(n))) * eta;
    for (int s : {+1, -1}) {
      const double same = effective_drive_strength(cavity, {n, s}, {n + 1, s}).eta_tilde;
      const double flip = effective_drive_strength(cavity, {n, s}, {n + 1, -s}).eta_tilde;
      CHECK(std::abs(same - enhanced) <= 1e-12 * enhanced);
      CHECK(std::abs(flip - suppressed) <= 1e-12 * enhanced);
    }
  }
}

TEST_CASE("transition table contents") {
  auto atom = paper_params(DriveKind::Atom, 1.6, 0.0);
  const auto table = transition_table(atom, 1);
  REQUIRE(table.size() == 6);  // 2 ground + 4 first-to-second
  const double eta = atom.eta;
  for (const auto& t : table) {
    const double mag = std::abs(t.eta_tilde);
    const bool ground = t.from.n == 0;
    CHECK(std::abs(mag - (ground ? std::sqrt(2.0) * eta : eta)) < 1e-12 * eta);
  }

  auto cavity = paper_params(DriveKind::Cavity, 1.1, 0.0);
  const auto ctable = transition_table(cavity, 1);
  REQUIRE(ctable.size() == 6);
  for (const auto& t : ctable) {
    const double mag = std::abs(t.eta_tilde) / cavity.eta;
    const bool ok = std::abs(mag - std::sqrt(2.0)) < 1e-12 ||
                    std::abs(mag - (std::sqrt(2.0) + 1.0)) < 1e-12 ||
                    std::abs(mag - (std::sqrt(2.0) - 1.0)) < 1e-12;
    CHECK(ok);
  }
}

TEST_CASE("no-drive and truncation errors") {
  auto none = paper_params(DriveKind::None, 0.0, 0.0);
  CHECK_THROWS_AS(transition_table(none, 1), std::invalid_argument);
  CHECK_THROWS_AS(effective_drive_strength(none, {0, +1}, {1, +1}), std::invalid_argument);

  auto atom = paper_params(DriveKind::Atom, 0.55, 0.0, 0.0, 3);
  CHECK_THROWS_AS(transition_table(atom, 3), std::invalid_argument);
  CHECK_THROWS_AS(effective_drive_strength(atom, {3, +1}, {4, +1}), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  auto p = paper_params(DriveKind::Atom, 0.55, 18.0);
  p.g = -1.0;
  CHECK_THROWS_AS(build_hamiltonian(p), std::invalid_argument);
  p = paper_params(DriveKind::Atom, 0.55, 18.0);
  p.eta = -1.0;
  CHECK_THROWS_AS(build_hamiltonian(p), std::invalid_argument);
  CHECK(paper_params(DriveKind::Atom, 0.55, 18.0, 3.0).delta_ac() ==
        doctest::Approx(omega_from_mhz(3.0)));
}
