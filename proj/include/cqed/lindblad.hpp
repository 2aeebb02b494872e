#pragma once

#include <map>
#include <vector>

#include "cqed/jcmodel.hpp"

// Liouvillian construction, steady state, and density-matrix propagation.
//
// Vectorization is column-stacking: vec(A X B) = (B^T (x) A) vec(X), so the
// element (i, j) of a D x D matrix sits at vec index i + j*D. The master
// equation follows the convention with the factor 2 on the sandwich term,
//   rho' = -i[H, rho] + sum_i (2 C_i rho C_i+ - rho C_i+ C_i - C_i+ C_i rho),
// with C_1 = sqrt(gamma) sigma and C_2 = sqrt(kappa) a, so kappa and gamma
// are field/polarization decay rates and intensities decay at 2 kappa,
// 2 gamma.

namespace cqed {

struct DensityMatrix {
  SpaceDims dims;
  Matrix m;

  // Checks Hermiticity and trace within 1e-10 and eigenvalues >= -1e-8;
  // throws std::runtime_error on violation.
  void validate() const;
};

// Linear map on vectorized density matrices; entries in rad/s.
struct Superoperator {
  SpaceDims dims;
  Matrix m;

  int vec_dim() const { return dims.total() * dims.total(); }
};

Vector vectorize(const Matrix& x);
Matrix unvectorize(const Vector& v, SpaceDims dims);

DensityMatrix pure_state(const Vector& psi, SpaceDims dims);

Superoperator liouvillian(const SystemParams& p);

// Unique rho_ss with L vec(rho_ss) = 0 and unit trace, solved by replacing
// one row of L with the trace constraint. Throws std::runtime_error when the
// bordered system does not determine a valid state (degenerate nullspace).
DensityMatrix steady_state(const Superoperator& liouville);

// exp(L tau) applied to rho0 via scaling-and-squaring matrix exponential.
// tau must be non-negative; negative delays are handled at the correlation
// layer by operator reordering.
DensityMatrix propagate(const Superoperator& liouville, const DensityMatrix& rho0, double tau);

Complex expectation(const OperatorMatrix& op, const DensityMatrix& rho);

// Sequential propagation helper for sampling e^(L tau) v on a delay grid:
// caches exp(L dt) per distinct step so uniform grids cost one exponential.
class StepPropagator {
 public:
  explicit StepPropagator(const Superoperator& liouville) : liouville_(&liouville) {}

  // v <- exp(L dt) v
  void advance(Vector& v, double dt);

  // u <- exp(L dt)^T u, the row-form update for trace functionals.
  void advance_transpose(Vector& u, double dt);

 private:
  const Matrix& step(long long key);

  const Superoperator* liouville_;
  std::map<long long, Matrix> cache_;
};

}  // namespace cqed
