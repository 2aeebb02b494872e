#pragma once

#include <utility>
#include <vector>

#include "cqed/hilbert.hpp"

// Driven Jaynes-Cummings model: Hamiltonian, dressed doublets, and the
// effective drive strengths between neighbouring excitation manifolds.

namespace cqed {

enum class DriveKind { None, Atom, Cavity };

// Physical constants of the driven system, all angular frequencies in rad/s.
// Detunings follow delta = omega_drive - omega, so the atom-cavity detuning
// Delta_ac = omega_a - omega_c equals delta_c - delta_a.
struct SystemParams {
  double g = 0.0;
  double kappa = 0.0;  // cavity field decay
  double gamma = 0.0;  // atomic polarization decay
  double delta_a = 0.0;
  double delta_c = 0.0;
  DriveKind drive = DriveKind::None;
  double eta = 0.0;  // drive strength; ignored for DriveKind::None
  SpaceDims dims;

  double delta_ac() const { return delta_c - delta_a; }
};

// Throws std::invalid_argument if rates or the drive strength are negative
// or the truncation is unusable.
void validate(const SystemParams& p);

// One member of the n-excitation doublet. sign is +1 for the upper branch,
// -1 for the lower; amplitudes live on the full product space and are
// phase-fixed so the |n photons, atom ground> component is real positive.
struct DressedState {
  int manifold = 0;
  int sign = +1;
  Vector amplitudes;
  double energy = 0.0;  // rad/s
};

// (n, sign) label of a dressed state; n = 0 denotes the ground state and
// its sign is ignored.
struct ManifoldLabel {
  int n = 0;
  int sign = +1;
};

struct TransitionStrength {
  ManifoldLabel from;
  ManifoldLabel to;
  double eta_tilde = 0.0;  // signed effective strength, rad/s
};

// H = delta_a sigma+ sigma- + delta_c a+ a + g (a+ sigma- + sigma+ a) + H_d
// with H_d = eta_c (a + a+) or eta_a (sigma- + sigma+); hbar absorbed.
OperatorMatrix build_hamiltonian(const SystemParams& p);

// Eigenpair of H restricted to the n-excitation manifold, drive off.
// Returns (upper, lower). Requires 1 <= n <= N_max and DriveKind::None.
std::pair<DressedState, DressedState> dressed_states(const SystemParams& p, int n);

// eta_tilde = 2 <to| H_d |from> evaluated with the configured drive kind and
// strength, signed via the dressed-state phase convention above.
TransitionStrength effective_drive_strength(const SystemParams& p, ManifoldLabel from,
                                            ManifoldLabel to);

// All drive transitions from the ground state through manifold n_max:
// two entries for |0,g> -> |1,+/->, four per step n -> n+1 thereafter.
std::vector<TransitionStrength> transition_table(const SystemParams& p, int n_max);

}  // namespace cqed
