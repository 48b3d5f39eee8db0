#include <cmath>
#include <complex>

#include <doctest.h>

#include "rydsim/quantum_core.hpp"
#include "rydsim/rng.hpp"

using namespace rydsim;

namespace {

ComplexMatrix random_matrix(int dim, std::uint64_t seed) {
  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c)
      m(r, c) = cplx{2.0 * rng::uniform(seed, r, c, 0) - 1.0,
                     2.0 * rng::uniform(seed, r, c, 1) - 1.0};
  return m;
}

ComplexMatrix random_hermitian(int dim, std::uint64_t seed) {
  ComplexMatrix m = random_matrix(dim, seed);
  ComplexMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

// independent brute-force product, the oracle for matmul
ComplexMatrix triple_loop_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.dim());
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) {
      cplx s{0.0, 0.0};
      for (int k = 0; k < a.dim(); ++k) s += a(r, k) * b(k, c);
      out(r, c) = s;
    }
  return out;
}

}  // namespace

TEST_SUITE("quantum_core") {

TEST_CASE("matmul: identity leaves a matrix unchanged") {
  const ComplexMatrix a = random_matrix(4, 11);
  CHECK(max_abs_diff(matmul(ComplexMatrix::identity(4), a), a) == 0.0);
  CHECK(max_abs_diff(matmul(a, ComplexMatrix::identity(4)), a) == 0.0);
}

TEST_CASE("matmul: pauli involution sigma_x^2 = I") {
  CHECK(max_abs_diff(pauli_x() * pauli_x(), pauli_i()) == 0.0);
  CHECK(max_abs_diff(pauli_y() * pauli_y(), pauli_i()) == 0.0);
  CHECK(max_abs_diff(pauli_z() * pauli_z(), pauli_i()) == 0.0);
}

TEST_CASE("matmul agrees with the triple-loop oracle on random 3x3 pairs") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ComplexMatrix a = random_matrix(3, 100 + s);
    const ComplexMatrix b = random_matrix(3, 200 + s);
    CHECK(max_abs_diff(matmul(a, b), triple_loop_product(a, b)) < 1e-14);
  }
}

TEST_CASE("matmul rejects mismatched dimensions") {
  CHECK_THROWS_AS(matmul(ComplexMatrix(2), ComplexMatrix(3)), std::invalid_argument);
}

TEST_CASE("eigensystem of a diagonal matrix") {
  ComplexMatrix m(3);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  m(2, 2) = 2.0;
  const EigenSystem es = hermitian_eigensystem(m);
  CHECK(es.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(es.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(es.eigenvalues[2] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eigensystem of sigma_x") {
  const EigenSystem es = hermitian_eigensystem(pauli_x());
  CHECK(es.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(es.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
  // eigenvectors (|0> -+ |1>)/sqrt(2) up to phase
  Ket minus(2), plus(2);
  minus.amp = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};
  plus.amp = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  CHECK(std::abs(es.eigenvectors[0].dot(minus)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(es.eigenvectors[1].dot(plus)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("eigensystem of the Stokes coupling block splits by +-omega/2") {
  // dressed-state splitting of a resonant 2pi x 12.1 rad/us drive
  const double omega = 2.0 * M_PI * 12.1;
  ComplexMatrix m(2);
  m(0, 1) = 0.5 * omega;
  m(1, 0) = 0.5 * omega;
  const EigenSystem es = hermitian_eigensystem(m);
  CHECK(es.eigenvalues[0] == doctest::Approx(-0.5 * omega).epsilon(1e-12));
  CHECK(es.eigenvalues[1] == doctest::Approx(0.5 * omega).epsilon(1e-12));
}

TEST_CASE("eigensystem reconstructs its input and is orthonormal") {
  for (int dim : {2, 3, 5, 8}) {
    const ComplexMatrix h = random_hermitian(dim, 300 + static_cast<std::uint64_t>(dim));
    const EigenSystem es = hermitian_eigensystem(h);
    ComplexMatrix rebuilt(dim);
    for (int k = 0; k < dim; ++k) {
      const Ket& v = es.eigenvectors[static_cast<size_t>(k)];
      ComplexMatrix term = outer(v, v);
      term *= es.eigenvalues[static_cast<size_t>(k)];
      rebuilt += term;
    }
    CHECK(max_abs_diff(rebuilt, h) < 1e-8);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        const cplx overlap = es.eigenvectors[static_cast<size_t>(a)].dot(
            es.eigenvectors[static_cast<size_t>(b)]);
        CHECK(std::abs(overlap - (a == b ? cplx{1.0, 0.0} : cplx{0.0, 0.0})) < 1e-9);
      }
    for (size_t k = 1; k < es.eigenvalues.size(); ++k)
      CHECK(es.eigenvalues[k] >= es.eigenvalues[k - 1]);
  }
}

TEST_CASE("eigensystem rejects non-Hermitian input") {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eigensystem(m), std::invalid_argument);
}

TEST_CASE("expm_unitary of zero is the identity") {
  const ComplexMatrix u = expm_unitary(ComplexMatrix(3), 1.7);
  CHECK(max_abs_diff(u, ComplexMatrix::identity(3)) < 1e-12);
}

TEST_CASE("expm_unitary pi pulse equals -i sigma_x") {
  const double omega = 2.0 * M_PI * 5.0;
  ComplexMatrix h = pauli_x();
  h *= 0.5 * omega;
  const ComplexMatrix u = expm_unitary(h, M_PI / omega);
  ComplexMatrix expected = pauli_x();
  expected *= cplx{0.0, -1.0};
  CHECK(max_abs_diff(u, expected) < 1e-12);
}

TEST_CASE("expm_unitary returns a unitary") {
  const ComplexMatrix h = random_hermitian(3, 42);
  const ComplexMatrix u = expm_unitary(h, 0.83);
  CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(3)) < 1e-9);
}

TEST_CASE("expm_unitary composes additively in time") {
  const ComplexMatrix h = random_hermitian(4, 77);
  const ComplexMatrix u = expm_unitary(h, 0.4) * expm_unitary(h, 1.1);
  CHECK(max_abs_diff(u, expm_unitary(h, 1.5)) < 1e-9);
}

TEST_CASE("density matrix validation") {
  const DensityMatrix rho = DensityMatrix::pure_level(3, 1);
  CHECK(rho.population(1) == doctest::Approx(1.0));
  CHECK(rho.min_eigenvalue() > -1e-12);

  ComplexMatrix bad_trace = ComplexMatrix::identity(2);
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad_trace), std::invalid_argument);

  ComplexMatrix not_hermitian(2);
  not_hermitian(0, 0) = 1.0;
  not_hermitian(0, 1) = cplx{0.0, 0.5};
  CHECK_THROWS_AS(DensityMatrix::from_matrix(not_hermitian), std::invalid_argument);

  ComplexMatrix mixed(2);
  mixed(0, 0) = 0.5;
  mixed(1, 1) = 0.5;
  mixed(0, 1) = 0.25;
  mixed(1, 0) = 0.25;
  CHECK(DensityMatrix::from_matrix(mixed).min_eigenvalue() ==
        doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("kets normalize and reject zero vectors") {
  Ket k(2);
  k.amp = {3.0, 4.0};
  CHECK(k.normalized().norm() == doctest::Approx(1.0).epsilon(1e-14));
  Ket z(2);
  CHECK_THROWS_AS(z.normalized(), std::invalid_argument);
}

}  // TEST_SUITE
