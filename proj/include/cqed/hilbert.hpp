#pragma once

#include <Eigen/Dense>
#include <complex>

// Operator algebra on the truncated atom (x) cavity product space.
//
// Conventions, fixed everywhere in this library:
//   * factor ordering is atom (x) cavity, so a product-basis index is
//     atom_index * fock_dim + photon_number;
//   * atom index 0 is the ground state |g>, index 1 the excited state |e>;
//   * Fock index n runs 0..fock_dim-1 with fock_dim = N_max + 1.

namespace cqed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct SpaceDims {
  int atom_dim = 2;
  int fock_dim = 13;

  int total() const { return atom_dim * fock_dim; }
  int n_max() const { return fock_dim - 1; }
  int index(int atom, int photon) const { return atom * fock_dim + photon; }

  bool operator==(const SpaceDims&) const = default;
};

// Validates the truncation; throws std::invalid_argument on fock_dim < 2.
SpaceDims make_dims(int fock_dim);

// Complex square matrix on the product space, tagged with its dimensions.
// Units are dimensionless or rad/s depending on the role of the operator.
struct OperatorMatrix {
  SpaceDims dims;
  Matrix m;

  OperatorMatrix adjoint() const { return {dims, m.adjoint()}; }
};

OperatorMatrix operator+(const OperatorMatrix& x, const OperatorMatrix& y);
OperatorMatrix operator-(const OperatorMatrix& x, const OperatorMatrix& y);
OperatorMatrix operator*(const OperatorMatrix& x, const OperatorMatrix& y);
OperatorMatrix operator*(double s, const OperatorMatrix& x);
OperatorMatrix operator*(Complex s, const OperatorMatrix& x);

// I_atom (x) a with a|n> = sqrt(n)|n-1> on the truncated Fock space.
OperatorMatrix annihilation_operator(SpaceDims dims);
OperatorMatrix creation_operator(SpaceDims dims);
OperatorMatrix number_operator(SpaceDims dims);

// sigma (x) I_cavity with sigma|e> = |g>, sigma|g> = 0.
OperatorMatrix atomic_lowering_operator(SpaceDims dims);
OperatorMatrix atomic_raising_operator(SpaceDims dims);

OperatorMatrix identity_operator(SpaceDims dims);

// Kronecker product atom_op (x) cavity_op; factor sizes must match dims.
OperatorMatrix tensor_embed(const Matrix& atom_op, const Matrix& cavity_op, SpaceDims dims);

// Unit column vector for the product basis state |atom, photon>.
Vector basis_state(SpaceDims dims, int atom, int photon);

}  // namespace cqed
