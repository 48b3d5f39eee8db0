// Copyright 2026 The rydsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RYDSIM_QUANTUM_CORE_HPP
#define RYDSIM_QUANTUM_CORE_HPP

#include <complex>
#include <initializer_list>
#include <vector>

namespace rydsim {

using cplx = std::complex<double>;

/// Dense complex square matrix for small Hilbert spaces (d <= 8).
/// Row-major storage, value semantics throughout.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim);
  ComplexMatrix(int dim, std::initializer_list<cplx> entries);

  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  cplx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
  const cplx& operator()(int r, int c) const {
    return a_[static_cast<size_t>(r) * dim_ + c];
  }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  bool is_hermitian(double tol = 1e-10) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

 private:
  int dim_ = 0;
  std::vector<cplx> a_;
};

/// State vector of a d-level system.
struct Ket {
  int dim = 0;
  std::vector<cplx> amp;

  Ket() = default;
  explicit Ket(int d) : dim(d), amp(static_cast<size_t>(d), cplx{0.0, 0.0}) {}
  static Ket basis(int dim, int level);

  double norm() const;
  Ket normalized() const;
  cplx dot(const Ket& other) const;  // <this|other>
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return matmul(a, b);
}

/// |ket><bra|
ComplexMatrix outer(const Ket& ket, const Ket& bra);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  std::vector<Ket> eigenvectors;    // orthonormal, matching order
};

/// Full eigensystem of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws std::invalid_argument on non-Hermitian input.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);

/// exp(-i h t) for Hermitian h, via the eigendecomposition.
ComplexMatrix expm_unitary(const ComplexMatrix& h, double t);

/// Hermitian, unit-trace, positive state. Construction checks hermiticity
/// and trace; the eigenvalue floor is checked on demand (min_eigenvalue)
/// since it needs a full diagonalization.
class DensityMatrix {
 public:
  static DensityMatrix pure(const Ket& psi);
  static DensityMatrix pure_level(int dim, int level);
  static DensityMatrix from_matrix(const ComplexMatrix& m);

  int dim() const { return m_.dim(); }
  const ComplexMatrix& matrix() const { return m_; }
  double population(int level) const { return m_(level, level).real(); }
  double min_eigenvalue() const;

  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-9;
  static constexpr double kEigenFloor = -1e-9;

 private:
  explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// Pauli matrices in the (|0>, |1>) qubit ordering.
ComplexMatrix pauli_i();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace rydsim

#endif
