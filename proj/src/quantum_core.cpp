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

#include "rydsim/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rydsim {

ComplexMatrix::ComplexMatrix(int dim)
    : dim_(dim), a_(static_cast<size_t>(dim) * dim, cplx{0.0, 0.0}) {
  if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
}

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<cplx> entries)
    : ComplexMatrix(dim) {
  if (entries.size() != a_.size())
    throw std::invalid_argument("ComplexMatrix: entry count must equal dim^2");
  std::copy(entries.begin(), entries.end(), a_.begin());
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t{0.0, 0.0};
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  double scale = std::max(1.0, max_abs());
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol * scale)
        return false;
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& v : a_) v *= s;
  return *this;
}

Ket Ket::basis(int dim, int level) {
  if (level < 0 || level >= dim) throw std::invalid_argument("Ket::basis: bad level");
  Ket k(dim);
  k.amp[static_cast<size_t>(level)] = 1.0;
  return k;
}

double Ket::norm() const {
  double s = 0.0;
  for (const cplx& v : amp) s += std::norm(v);
  return std::sqrt(s);
}

Ket Ket::normalized() const {
  double n = norm();
  if (n == 0.0) throw std::invalid_argument("Ket: cannot normalize zero vector");
  Ket out = *this;
  for (cplx& v : out.amp) v /= n;
  return out;
}

cplx Ket::dot(const Ket& other) const {
  if (other.dim != dim) throw std::invalid_argument("Ket dimension mismatch");
  cplx s{0.0, 0.0};
  for (int i = 0; i < dim; ++i)
    s += std::conj(amp[static_cast<size_t>(i)]) * other.amp[static_cast<size_t>(i)];
  return s;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("matmul: dimension mismatch");
  const int d = a.dim();
  ComplexMatrix out(d);
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{0.0, 0.0}) continue;
      for (int c = 0; c < d; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

ComplexMatrix outer(const Ket& ket, const Ket& bra) {
  if (ket.dim != bra.dim) throw std::invalid_argument("outer: dimension mismatch");
  ComplexMatrix m(ket.dim);
  for (int r = 0; r < ket.dim; ++r)
    for (int c = 0; c < ket.dim; ++c)
      m(r, c) = ket.amp[static_cast<size_t>(r)] *
                std::conj(bra.amp[static_cast<size_t>(c)]);
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c)
      m = std::max(m, std::abs(a(r, c) - b(r, c)));
  return m;
}

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int p = 0; p < a.dim(); ++p)
    for (int q = p + 1; q < a.dim(); ++q) s += std::norm(a(p, q));
  return std::sqrt(2.0 * s);
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  if (!m.is_hermitian(1e-10))
    throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian");
  const int d = m.dim();

  // Work on the symmetrized copy so accumulated roundoff in the caller
  // cannot leak into the rotations.
  ComplexMatrix a(d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
  ComplexMatrix v = ComplexMatrix::identity(d);

  const double stop = 1e-15 * (1.0 + a.frobenius_norm());
  for (int sweep = 0; sweep < 100 && offdiag_norm(a) > stop; ++sweep) {
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) {
        const cplx g = a(p, q);
        const double ag = std::abs(g);
        if (ag < 1e-300) continue;
        // Phase the (p,q) entry real, then apply the usual real Jacobi
        // rotation; column q of the combined unitary carries the phase f.
        const cplx f = std::conj(g) / ag;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * ag);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- J^dag A J with J(:,p) = (c, -s f), J(:,q) = (s, c f) at rows p,q.
        for (int k = 0; k < d; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * (f * akq);
          a(k, q) = s * akp + c * (f * akq);
        }
        for (int k = 0; k < d; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * (std::conj(f) * aqk);
          a(q, k) = s * apk + c * (std::conj(f) * aqk);
        }
        a(p, q) = std::conj(a(q, p));  // keep the pair exactly conjugate
        for (int k = 0; k < d; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * (f * vkq);
          v(k, q) = s * vkp + c * (f * vkq);
        }
      }
  }

  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&a](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem es;
  es.eigenvalues.reserve(static_cast<size_t>(d));
  es.eigenvectors.reserve(static_cast<size_t>(d));
  for (int idx : order) {
    es.eigenvalues.push_back(a(idx, idx).real());
    Ket vec(d);
    for (int k = 0; k < d; ++k) vec.amp[static_cast<size_t>(k)] = v(k, idx);
    es.eigenvectors.push_back(std::move(vec));
  }
  return es;
}

ComplexMatrix expm_unitary(const ComplexMatrix& h, double t) {
  if (!h.is_hermitian(1e-10))
    throw std::invalid_argument("expm_unitary: input is not Hermitian");
  const int d = h.dim();
  EigenSystem es = hermitian_eigensystem(h);
  ComplexMatrix u(d);
  for (int k = 0; k < d; ++k) {
    const cplx phase = std::exp(cplx{0.0, -es.eigenvalues[static_cast<size_t>(k)] * t});
    const Ket& vec = es.eigenvectors[static_cast<size_t>(k)];
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        u(r, c) += phase * vec.amp[static_cast<size_t>(r)] *
                   std::conj(vec.amp[static_cast<size_t>(c)]);
  }
  return u;
}

DensityMatrix DensityMatrix::pure(const Ket& psi) {
  Ket n = psi.normalized();
  return DensityMatrix(outer(n, n));
}

DensityMatrix DensityMatrix::pure_level(int dim, int level) {
  return pure(Ket::basis(dim, level));
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m) {
  if (!m.is_hermitian(kHermitianTol))
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  if (std::abs(m.trace() - cplx{1.0, 0.0}) > kTraceTol)
    throw std::invalid_argument("DensityMatrix: trace must equal 1");
  return DensityMatrix(m);
}

double DensityMatrix::min_eigenvalue() const {
  EigenSystem es = hermitian_eigensystem(m_);
  return es.eigenvalues.front();
}

ComplexMatrix pauli_i() { return ComplexMatrix::identity(2); }
ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() {
  return ComplexMatrix(2, {0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0});
}
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

}  // namespace rydsim
