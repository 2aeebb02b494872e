#include "cqed/hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace cqed {

namespace {

void require_same_dims(const OperatorMatrix& x, const OperatorMatrix& y, const char* what) {
  if (!(x.dims == y.dims)) {
    throw std::invalid_argument(std::string(what) + ": operator dimensions do not match");
  }
}

}  // namespace

SpaceDims make_dims(int fock_dim) {
  if (fock_dim < 2) {
    throw std::invalid_argument("make_dims: fock_dim must be at least 2, got " +
                                std::to_string(fock_dim));
  }
  return SpaceDims{2, fock_dim};
}

OperatorMatrix operator+(const OperatorMatrix& x, const OperatorMatrix& y) {
  require_same_dims(x, y, "operator+");
  return {x.dims, x.m + y.m};
}

OperatorMatrix operator-(const OperatorMatrix& x, const OperatorMatrix& y) {
  require_same_dims(x, y, "operator-");
  return {x.dims, x.m - y.m};
}

OperatorMatrix operator*(const OperatorMatrix& x, const OperatorMatrix& y) {
  require_same_dims(x, y, "operator*");
  return {x.dims, x.m * y.m};
}

OperatorMatrix operator*(double s, const OperatorMatrix& x) { return {x.dims, s * x.m}; }

OperatorMatrix operator*(Complex s, const OperatorMatrix& x) { return {x.dims, s * x.m}; }

OperatorMatrix annihilation_operator(SpaceDims dims) {
  dims = make_dims(dims.fock_dim);
  Matrix a = Matrix::Zero(dims.fock_dim, dims.fock_dim);
  for (int n = 1; n < dims.fock_dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return tensor_embed(Matrix::Identity(2, 2), a, dims);
}

OperatorMatrix creation_operator(SpaceDims dims) { return annihilation_operator(dims).adjoint(); }

OperatorMatrix number_operator(SpaceDims dims) {
  dims = make_dims(dims.fock_dim);
  Matrix n = Matrix::Zero(dims.fock_dim, dims.fock_dim);
  for (int k = 0; k < dims.fock_dim; ++k) {
    n(k, k) = static_cast<double>(k);
  }
  return tensor_embed(Matrix::Identity(2, 2), n, dims);
}

OperatorMatrix atomic_lowering_operator(SpaceDims dims) {
  dims = make_dims(dims.fock_dim);
  Matrix sigma = Matrix::Zero(2, 2);
  sigma(0, 1) = 1.0;  // |g><e|
  return tensor_embed(sigma, Matrix::Identity(dims.fock_dim, dims.fock_dim), dims);
}

OperatorMatrix atomic_raising_operator(SpaceDims dims) {
  return atomic_lowering_operator(dims).adjoint();
}

OperatorMatrix identity_operator(SpaceDims dims) {
  dims = make_dims(dims.fock_dim);
  return {dims, Matrix::Identity(dims.total(), dims.total())};
}

OperatorMatrix tensor_embed(const Matrix& atom_op, const Matrix& cavity_op, SpaceDims dims) {
  dims = make_dims(dims.fock_dim);
  if (atom_op.rows() != dims.atom_dim || atom_op.cols() != dims.atom_dim) {
    throw std::invalid_argument("tensor_embed: atom factor does not match atom_dim");
  }
  if (cavity_op.rows() != dims.fock_dim || cavity_op.cols() != dims.fock_dim) {
    throw std::invalid_argument("tensor_embed: cavity factor does not match fock_dim");
  }
  return {dims, Eigen::kroneckerProduct(atom_op, cavity_op)};
}

Vector basis_state(SpaceDims dims, int atom, int photon) {
  dims = make_dims(dims.fock_dim);
  if (atom < 0 || atom >= dims.atom_dim || photon < 0 || photon >= dims.fock_dim) {
    throw std::invalid_argument("basis_state: index outside the product space");
  }
  Vector v = Vector::Zero(dims.total());
  v(dims.index(atom, photon)) = 1.0;
  return v;
}

}  // namespace cqed
