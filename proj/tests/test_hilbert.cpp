#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cqed/hilbert.hpp"

using namespace cqed;

namespace {

Matrix random_matrix(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = Complex(dist(rng), dist(rng));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("dims validation") {
  CHECK_THROWS_AS(make_dims(1), std::invalid_argument);
  CHECK_THROWS_AS(annihilation_operator(SpaceDims{2, 0}), std::invalid_argument);
  const auto dims = make_dims(13);
  CHECK(dims.atom_dim == 2);
  CHECK(dims.total() == 26);
  CHECK(dims.n_max() == 12);
}

TEST_CASE("ladder operator entries") {
  const auto dims = make_dims(3);
  const auto a = annihilation_operator(dims);

  // Fock block of the ground-atom sector: a[0,1] = 1, a[1,2] = sqrt(2).
  CHECK(a.m(dims.index(0, 0), dims.index(0, 1)).real() == doctest::Approx(1.0));
  CHECK(a.m(dims.index(0, 1), dims.index(0, 2)).real() == doctest::Approx(std::sqrt(2.0)));
  CHECK(a.m(dims.index(1, 0), dims.index(1, 1)).real() == doctest::Approx(1.0));

  // Annihilation of the vacuum.
  const Vector vacuum = basis_state(dims, 0, 0);
  CHECK((a.m * vacuum).norm() == doctest::Approx(0.0));
}

TEST_CASE("number operator spectrum is doubly degenerate 0..N") {
  const auto dims = make_dims(5);
  const auto n_op = creation_operator(dims) * annihilation_operator(dims);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(n_op.m);
  std::vector<double> eig(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + dims.total());
  std::sort(eig.begin(), eig.end());
  for (int n = 0; n < dims.fock_dim; ++n) {
    CHECK(eig[2 * n] == doctest::Approx(n).epsilon(1e-12));
    CHECK(eig[2 * n + 1] == doctest::Approx(n).epsilon(1e-12));
  }
}

TEST_CASE("atomic lowering operator") {
  const auto dims = make_dims(4);
  const auto sm = atomic_lowering_operator(dims);

  // Nilpotent.
  CHECK((sm * sm).m.norm() == doctest::Approx(0.0));

  // sigma+ sigma- + sigma- sigma+ = identity on the atom factor.
  const auto sp = sm.adjoint();
  const Matrix sum = (sp * sm + sm * sp).m;
  CHECK((sum - Matrix::Identity(dims.total(), dims.total())).norm() == doctest::Approx(0.0));

  // <g| sigma |e> = 1 at every photon number.
  for (int n = 0; n < dims.fock_dim; ++n) {
    const Vector g = basis_state(dims, 0, n);
    const Vector e = basis_state(dims, 1, n);
    CHECK((g.adjoint() * sm.m * e).value().real() == doctest::Approx(1.0));
  }
}

TEST_CASE("tensor embed identities") {
  const auto dims = make_dims(4);
  std::mt19937 rng(42);

  const auto eye = tensor_embed(Matrix::Identity(2, 2),
                                Matrix::Identity(dims.fock_dim, dims.fock_dim), dims);
  CHECK((eye.m - Matrix::Identity(dims.total(), dims.total())).norm() == doctest::Approx(0.0));

  // Mixed-product property (A (x) I)(I (x) B) = A (x) B.
  const Matrix a2 = random_matrix(2, rng);
  const Matrix b = random_matrix(dims.fock_dim, rng);
  const auto lhs = tensor_embed(a2, Matrix::Identity(dims.fock_dim, dims.fock_dim), dims) *
                   tensor_embed(Matrix::Identity(2, 2), b, dims);
  const auto rhs = tensor_embed(a2, b, dims);
  CHECK((lhs.m - rhs.m).norm() == doctest::Approx(0.0).epsilon(1e-12));

  // trace(A (x) B) = trace(A) trace(B).
  const Complex t = tensor_embed(a2, b, dims).m.trace();
  const Complex expected = a2.trace() * b.trace();
  CHECK(std::abs(t - expected) < 1e-12);

  CHECK_THROWS_AS(tensor_embed(random_matrix(3, rng), b, dims), std::invalid_argument);
  CHECK_THROWS_AS(tensor_embed(a2, random_matrix(3, rng), dims), std::invalid_argument);
}

TEST_CASE("commutator [a, a+] = 1 below the truncation level") {
  const auto dims = make_dims(8);
  const auto a = annihilation_operator(dims);
  const auto ad = a.adjoint();
  const Matrix comm = (a * ad - ad * a).m;
  for (int s = 0; s < 2; ++s) {
    for (int n = 0; n < dims.fock_dim - 1; ++n) {
      const int k = dims.index(s, n);
      CHECK(std::abs(comm(k, k) - Complex(1.0, 0.0)) < 1e-14);
    }
    // The top Fock level absorbs the truncation error.
    const int top = dims.index(s, dims.n_max());
    CHECK(comm(top, top).real() == doctest::Approx(-dims.n_max()));
  }
}

TEST_CASE("factor operators commute") {
  const auto dims = make_dims(6);
  const auto a = annihilation_operator(dims);
  const auto sm = atomic_lowering_operator(dims);
  CHECK((a * sm - sm * a).m.norm() == doctest::Approx(0.0));
}

TEST_CASE("adjoint pairs") {
  const auto dims = make_dims(5);
  CHECK((creation_operator(dims).m - annihilation_operator(dims).m.adjoint()).norm() ==
        doctest::Approx(0.0));
  CHECK((atomic_raising_operator(dims).m - atomic_lowering_operator(dims).m.adjoint()).norm() ==
        doctest::Approx(0.0));
}
