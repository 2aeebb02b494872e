#include "cqed/jcmodel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cqed {

namespace {

OperatorMatrix drive_term(const SystemParams& p, double strength) {
  switch (p.drive) {
    case DriveKind::Cavity: {
      const auto a = annihilation_operator(p.dims);
      return strength * (a + a.adjoint());
    }
    case DriveKind::Atom: {
      const auto sm = atomic_lowering_operator(p.dims);
      return strength * (sm + sm.adjoint());
    }
    case DriveKind::None:
      throw std::invalid_argument("drive_term: no drive configured");
  }
  throw std::invalid_argument("drive_term: unknown drive kind");
}

// Phase-fix an eigenvector so its |n,g> component is real positive; falls
// back to the largest component if that one vanishes.
void fix_phase(Vector& v, int ng_index) {
  Complex pivot = v(ng_index);
  if (std::abs(pivot) < 1e-12) {
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    pivot = v(imax);
  }
  v *= std::conj(pivot) / std::abs(pivot);
}

}  // namespace

void validate(const SystemParams& p) {
  make_dims(p.dims.fock_dim);
  if (p.g < 0.0 || p.kappa < 0.0 || p.gamma < 0.0) {
    throw std::invalid_argument("SystemParams: g, kappa, gamma must be non-negative");
  }
  if (p.drive != DriveKind::None && p.eta < 0.0) {
    throw std::invalid_argument("SystemParams: drive strength must be non-negative");
  }
}

OperatorMatrix build_hamiltonian(const SystemParams& p) {
  validate(p);
  const auto a = annihilation_operator(p.dims);
  const auto ad = a.adjoint();
  const auto sm = atomic_lowering_operator(p.dims);
  const auto sp = sm.adjoint();

  OperatorMatrix h =
      p.delta_a * (sp * sm) + p.delta_c * (ad * a) + p.g * (ad * sm + sp * a);
  if (p.drive != DriveKind::None) {
    h = h + drive_term(p, p.eta);
  }
  return h;
}

std::pair<DressedState, DressedState> dressed_states(const SystemParams& p, int n) {
  validate(p);
  if (p.drive != DriveKind::None && p.eta != 0.0) {
    throw std::invalid_argument("dressed_states: requires zero drive");
  }
  if (n < 1 || n > p.dims.n_max()) {
    throw std::invalid_argument("dressed_states: manifold " + std::to_string(n) +
                                " outside truncation N_max=" + std::to_string(p.dims.n_max()));
  }

  // H restricted to span{|n,g>, |n-1,e>}.
  const auto h = build_hamiltonian(p);
  const int ig = p.dims.index(0, n);
  const int ie = p.dims.index(1, n - 1);
  Eigen::Matrix2cd block;
  block << h.m(ig, ig), h.m(ig, ie), h.m(ie, ig), h.m(ie, ie);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(block);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("dressed_states: eigensolver failed");
  }

  auto assemble = [&](int col, int sign) {
    DressedState s;
    s.manifold = n;
    s.sign = sign;
    s.energy = solver.eigenvalues()(col);
    s.amplitudes = Vector::Zero(p.dims.total());
    s.amplitudes(ig) = solver.eigenvectors()(0, col);
    s.amplitudes(ie) = solver.eigenvectors()(1, col);
    fix_phase(s.amplitudes, ig);
    return s;
  };

  // Eigenvalues come out ascending: column 1 is the upper branch.
  return {assemble(1, +1), assemble(0, -1)};
}

TransitionStrength effective_drive_strength(const SystemParams& p, ManifoldLabel from,
                                            ManifoldLabel to) {
  validate(p);
  if (p.drive == DriveKind::None || p.eta <= 0.0) {
    throw std::invalid_argument("effective_drive_strength: no drive configured");
  }
  if (from.n < 0 || to.n != from.n + 1) {
    throw std::invalid_argument("effective_drive_strength: transition must step n -> n+1");
  }
  if (to.n > p.dims.n_max()) {
    throw std::invalid_argument("effective_drive_strength: target manifold outside truncation");
  }

  SystemParams undriven = p;
  undriven.eta = 0.0;

  Vector from_vec;
  if (from.n == 0) {
    from_vec = basis_state(p.dims, 0, 0);
  } else {
    const auto [upper, lower] = dressed_states(undriven, from.n);
    from_vec = (from.sign >= 0) ? upper.amplitudes : lower.amplitudes;
  }
  const auto [upper, lower] = dressed_states(undriven, to.n);
  const Vector to_vec = (to.sign >= 0) ? upper.amplitudes : lower.amplitudes;

  const auto unit_drive = drive_term(p, 1.0);
  const Complex element = to_vec.dot(unit_drive.m * from_vec);  // <to| H_d(1) |from>
  const double scale = 2.0 * p.eta;
  if (std::abs(element.imag()) > 1e-12 * (std::abs(element) + 1.0)) {
    throw std::runtime_error("effective_drive_strength: matrix element not real after phase fix");
  }

  return TransitionStrength{from, to, scale * element.real()};
}

std::vector<TransitionStrength> transition_table(const SystemParams& p, int n_max) {
  validate(p);
  if (p.drive == DriveKind::None || p.eta <= 0.0) {
    throw std::invalid_argument("transition_table: no drive configured");
  }
  if (n_max < 0 || n_max + 1 > p.dims.n_max()) {
    throw std::invalid_argument("transition_table: n_max+1 exceeds truncation");
  }

  std::vector<TransitionStrength> table;
  for (int sign : {+1, -1}) {
    table.push_back(effective_drive_strength(p, {0, +1}, {1, sign}));
  }
  for (int n = 1; n <= n_max; ++n) {
    for (int s_from : {+1, -1}) {
      for (int s_to : {+1, -1}) {
        table.push_back(effective_drive_strength(p, {n, s_from}, {n + 1, s_to}));
      }
    }
  }
  return table;
}

}  // namespace cqed
