#include "cqed/lindblad.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace cqed {

void DensityMatrix::validate() const {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw std::runtime_error("DensityMatrix: entries do not match dims");
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::runtime_error("DensityMatrix: not Hermitian within 1e-10");
  }
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > 1e-10) {
    throw std::runtime_error("DensityMatrix: trace deviates from 1 beyond 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  if (solver.eigenvalues().minCoeff() < -1e-8) {
    throw std::runtime_error("DensityMatrix: negative eigenvalue below -1e-8");
  }
}

Vector vectorize(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvectorize(const Vector& v, SpaceDims dims) {
  const int d = dims.total();
  if (v.size() != d * d) {
    throw std::invalid_argument("unvectorize: vector length does not match dims");
  }
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

DensityMatrix pure_state(const Vector& psi, SpaceDims dims) {
  if (psi.size() != dims.total()) {
    throw std::invalid_argument("pure_state: vector length does not match dims");
  }
  const double norm = psi.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("pure_state: zero vector");
  }
  const Vector unit = psi / norm;
  return DensityMatrix{dims, unit * unit.adjoint()};
}

Superoperator liouvillian(const SystemParams& p) {
  validate(p);
  const int d = p.dims.total();
  const Matrix eye = Matrix::Identity(d, d);
  const Matrix h = build_hamiltonian(p).m;

  Matrix l = Complex(0.0, -1.0) *
             (Eigen::kroneckerProduct(eye, h) - Eigen::kroneckerProduct(h.transpose(), eye));

  const Matrix collapse[] = {std::sqrt(p.gamma) * atomic_lowering_operator(p.dims).m,
                             std::sqrt(p.kappa) * annihilation_operator(p.dims).m};
  for (const Matrix& c : collapse) {
    const Matrix cdc = c.adjoint() * c;
    l += 2.0 * Eigen::kroneckerProduct(c.conjugate(), c);
    l -= Eigen::kroneckerProduct(eye, cdc);
    l -= Eigen::kroneckerProduct(cdc.transpose(), eye);
  }
  return Superoperator{p.dims, std::move(l)};
}

DensityMatrix steady_state(const Superoperator& liouville) {
  const int d = liouville.dims.total();
  const int n = liouville.vec_dim();

  // Bordered system: overwrite the first row with the trace constraint.
  Matrix a = liouville.m;
  a.row(0).setZero();
  for (int i = 0; i < d; ++i) {
    a(0, i * (d + 1)) = 1.0;
  }
  Vector b = Vector::Zero(n);
  b(0) = 1.0;

  const Vector x = Eigen::PartialPivLU<Matrix>(a).solve(b);
  if (!x.allFinite()) {
    throw std::runtime_error("steady_state: singular bordered system (degenerate nullspace?)");
  }

  Matrix rho = unvectorize(x, liouville.dims);
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace().real();

  const double residual = (liouville.m * vectorize(rho)).norm();
  const double scale = liouville.m.norm();
  if (!(residual <= 1e-8 * (scale > 0.0 ? scale : 1.0))) {
    throw std::runtime_error("steady_state: residual too large; nullspace may be degenerate");
  }
  return DensityMatrix{liouville.dims, std::move(rho)};
}

DensityMatrix propagate(const Superoperator& liouville, const DensityMatrix& rho0, double tau) {
  if (tau < 0.0) {
    throw std::invalid_argument("propagate: tau must be non-negative");
  }
  if (rho0.m.rows() != liouville.dims.total()) {
    throw std::invalid_argument("propagate: state does not match Liouvillian dims");
  }
  if (tau == 0.0) {
    return rho0;
  }
  const Matrix expl = (liouville.m * tau).exp();
  return DensityMatrix{liouville.dims, unvectorize(expl * vectorize(rho0.m), liouville.dims)};
}

Complex expectation(const OperatorMatrix& op, const DensityMatrix& rho) {
  if (!(op.dims == rho.dims)) {
    throw std::invalid_argument("expectation: operator and state dimensions do not match");
  }
  // tr(op rho) = sum_ij op(i,j) rho(j,i)
  return op.m.cwiseProduct(rho.m.transpose()).sum();
}

namespace {

// Steps are quantized to 1 fs so that grid points differing only by
// floating-point construction noise share one cached exponential. The
// induced time error per step is below 0.5 fs, nine orders under the
// fastest physical timescale here.
constexpr double kStepQuantum = 1e-15;

long long step_key(double dt, const char* what) {
  if (dt < 0.0) {
    throw std::invalid_argument(std::string(what) + ": dt must be non-negative");
  }
  return std::llround(dt / kStepQuantum);
}

}  // namespace

const Matrix& StepPropagator::step(long long key) {
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    it = cache_.emplace(key, (liouville_->m * (key * kStepQuantum)).exp()).first;
  }
  return it->second;
}

void StepPropagator::advance(Vector& v, double dt) {
  const long long key = step_key(dt, "StepPropagator::advance");
  if (key == 0) {
    return;
  }
  v = step(key) * v;
}

void StepPropagator::advance_transpose(Vector& u, double dt) {
  const long long key = step_key(dt, "StepPropagator::advance_transpose");
  if (key == 0) {
    return;
  }
  u = step(key).transpose() * u;
}

}  // namespace cqed
