// Copyright 2026 The cqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cqec/operator.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "cqec/errors.hpp"

namespace cqec {

namespace {

Eigen::Index dim_for(int n_qubits) { return Eigen::Index{1} << n_qubits; }

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 16) {
    throw ValidationError("qubit count must be in [1, 16], got " + std::to_string(n_qubits));
  }
}

Eigen::Index index_of_bits(std::string_view bits) {
  Eigen::Index idx = 0;
  for (std::size_t pos = 0; pos < bits.size(); ++pos) {
    char c = bits[pos];
    if (c != '0' && c != '1') {
      throw ValidationError("bit string '" + std::string(bits) + "' has invalid character at position " +
                            std::to_string(pos));
    }
    idx = (idx << 1) | (c == '1' ? 1 : 0);
  }
  return idx;
}

}  // namespace

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Operator::Operator(int n_qubits, Matrix entries) : n_qubits_(n_qubits), m_(std::move(entries)) {
  check_qubit_count(n_qubits);
  const Eigen::Index d = dim_for(n_qubits);
  if (m_.rows() != d || m_.cols() != d) {
    std::ostringstream os;
    os << "operator on " << n_qubits << " qubits must be " << d << "x" << d << ", got " << m_.rows() << "x"
       << m_.cols();
    throw DimensionError(os.str());
  }
}

Operator Operator::identity(int n_qubits) {
  check_qubit_count(n_qubits);
  return {n_qubits, Matrix::Identity(dim_for(n_qubits), dim_for(n_qubits))};
}

Operator Operator::zero(int n_qubits) {
  check_qubit_count(n_qubits);
  return {n_qubits, Matrix::Zero(dim_for(n_qubits), dim_for(n_qubits))};
}

Operator Operator::ket_bra(std::string_view ket, std::string_view bra) {
  if (ket.size() != bra.size() || ket.empty()) {
    throw DimensionError("ket and bra bit strings must be nonempty and of equal length");
  }
  const int n = static_cast<int>(ket.size());
  Operator out = zero(n);
  out.m_(index_of_bits(ket), index_of_bits(bra)) = 1.0;
  return out;
}

Operator Operator::adjoint() const { return {n_qubits_, m_.adjoint()}; }

bool Operator::is_hermitian(double tol) const { return hermiticity_error() < tol; }

double Operator::hermiticity_error() const { return max_abs(m_ - m_.adjoint()); }

Operator& Operator::operator+=(const Operator& other) {
  require_same_dim(*this, other, "operator sum");
  m_ += other.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_dim(*this, other, "operator difference");
  m_ -= other.m_;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "operator product");
  return {a.n_qubits_, a.m_ * b.m_};
}

Operator operator*(Complex s, const Operator& a) { return {a.n_qubits_, s * a.m_}; }

void require_same_dim(const Operator& a, const Operator& b, std::string_view what) {
  if (a.n_qubits() != b.n_qubits()) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a.n_qubits() << " vs " << b.n_qubits() << " qubits)";
    throw DimensionError(os.str());
  }
}

// --- StateVector ------------------------------------------------------------

StateVector::StateVector(int n_qubits, Vector amplitudes, Unchecked) : n_qubits_(n_qubits), v_(std::move(amplitudes)) {
  check_qubit_count(n_qubits);
  if (v_.size() != dim_for(n_qubits)) {
    throw DimensionError("state on " + std::to_string(n_qubits) + " qubits needs " +
                         std::to_string(dim_for(n_qubits)) + " amplitudes, got " + std::to_string(v_.size()));
  }
}

StateVector::StateVector(int n_qubits, Vector amplitudes) : StateVector(n_qubits, std::move(amplitudes), Unchecked{}) {
  if (std::abs(v_.norm() - 1.0) > 1e-12) {
    throw ValidationError("state vector is not normalized (norm " + std::to_string(v_.norm()) + ")");
  }
}

StateVector StateVector::unnormalized(int n_qubits, Vector amplitudes) {
  return {n_qubits, std::move(amplitudes), Unchecked{}};
}

StateVector StateVector::basis(std::string_view bits) {
  if (bits.empty()) throw ValidationError("basis state needs at least one bit");
  return basis(static_cast<int>(bits.size()), index_of_bits(bits));
}

StateVector StateVector::basis(int n_qubits, Eigen::Index index) {
  check_qubit_count(n_qubits);
  if (index < 0 || index >= dim_for(n_qubits)) {
    throw ValidationError("basis index " + std::to_string(index) + " out of range");
  }
  Vector v = Vector::Zero(dim_for(n_qubits));
  v(index) = 1.0;
  return {n_qubits, std::move(v)};
}

StateVector operator*(const Operator& op, const StateVector& psi) {
  if (op.n_qubits() != psi.n_qubits_) {
    throw DimensionError("operator/state dimension mismatch");
  }
  return {psi.n_qubits_, op.matrix() * psi.v_, StateVector::Unchecked{}};
}

StateVector kron(const StateVector& a, const StateVector& b) {
  Vector v(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a.v_(i) * b.v_;
  return {a.n_qubits_ + b.n_qubits_, std::move(v), StateVector::Unchecked{}};
}

// --- DensityMatrix ----------------------------------------------------------

double min_eigenvalue_hermitian(const Matrix& m) {
  Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  const double herm = op_.hermiticity_error();
  if (herm > kHermitianTol) {
    throw ValidationError("density matrix is not Hermitian (max deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = op_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) {
    std::ostringstream os;
    os << "density matrix trace must be 1, got " << tr;
    throw ValidationError(os.str());
  }
  const double lo = min_eigenvalue();
  if (lo < -kPositivityTol) {
    throw ValidationError("density matrix has negative eigenvalue " + std::to_string(lo));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-12) throw ValidationError("pure state must be normalized");
  return DensityMatrix(Operator(psi.n_qubits(), psi.amplitudes() * psi.amplitudes().adjoint()));
}

double DensityMatrix::min_eigenvalue() const { return min_eigenvalue_hermitian(op_.matrix()); }

double DensityMatrix::expectation(const StateVector& psi) const {
  if (psi.n_qubits() != n_qubits()) throw DimensionError("expectation: dimension mismatch");
  return (psi.amplitudes().adjoint() * op_.matrix() * psi.amplitudes())(0, 0).real();
}

// --- algebra ----------------------------------------------------------------

Operator pauli_string(std::string_view spec) {
  if (spec.empty()) throw ValidationError("Pauli string must be nonempty");
  Matrix out = Matrix::Ones(1, 1);
  for (std::size_t pos = 0; pos < spec.size(); ++pos) {
    Matrix p(2, 2);
    switch (spec[pos]) {
      case 'I': p << 1, 0, 0, 1; break;
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, -kI, kI, 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default:
        throw ValidationError("Pauli string '" + std::string(spec) + "': invalid character '" +
                              std::string(1, spec[pos]) + "' at position " + std::to_string(pos));
    }
    out = Eigen::kroneckerProduct(out, p).eval();
  }
  return {static_cast<int>(spec.size()), std::move(out)};
}

Operator kron(const Operator& a, const Operator& b) {
  return {a.n_qubits() + b.n_qubits(), Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval()};
}

Operator kron_list(std::span<const Operator> ops) {
  if (ops.empty()) throw ValidationError("kron_list needs at least one operator");
  Operator out = ops.front();
  for (const auto& op : ops.subspan(1)) out = kron(out, op);
  return out;
}

Operator kron_list(std::initializer_list<Operator> ops) {
  return kron_list(std::span<const Operator>(ops.begin(), ops.size()));
}

Matrix partial_trace(const Matrix& m, int n_qubits, const std::vector<int>& keep) {
  if (keep.empty()) throw ValidationError("partial_trace: keep set must be nonempty");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw ValidationError("partial_trace: duplicate qubit index");
  }
  for (int q : kept) {
    if (q < 0 || q >= n_qubits) {
      throw ValidationError("partial_trace: qubit index " + std::to_string(q) + " out of range for " +
                            std::to_string(n_qubits) + " qubits");
    }
  }
  std::vector<int> traced;
  for (int q = 0; q < n_qubits; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }

  // Scatter the bits of a sub-index onto the chosen qubit positions.
  auto scatter = [n_qubits](Eigen::Index sub, const std::vector<int>& qubits) {
    Eigen::Index full = 0;
    const auto k = static_cast<int>(qubits.size());
    for (int j = 0; j < k; ++j) {
      if ((sub >> (k - 1 - j)) & 1) full |= Eigen::Index{1} << (n_qubits - 1 - qubits[j]);
    }
    return full;
  };

  const Eigen::Index dk = Eigen::Index{1} << kept.size();
  const Eigen::Index dt = Eigen::Index{1} << traced.size();
  std::vector<Eigen::Index> kept_idx(dk), traced_idx(dt);
  for (Eigen::Index i = 0; i < dk; ++i) kept_idx[i] = scatter(i, kept);
  for (Eigen::Index i = 0; i < dt; ++i) traced_idx[i] = scatter(i, traced);

  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index e : traced_idx) acc += m(kept_idx[i] | e, kept_idx[j] | e);
      out(i, j) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
  return DensityMatrix(
      Operator(static_cast<int>(keep.size()), partial_trace(rho.matrix(), rho.n_qubits(), keep)));
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return {a.n_qubits(), a.matrix() * b.matrix() - b.matrix() * a.matrix()};
}

Operator expm_hermitian(const Operator& h, double t) {
  const double herm = h.hermiticity_error();
  if (herm >= 1e-10) {
    throw ValidationError("expm_hermitian: generator is not Hermitian (max deviation " + std::to_string(herm) + ")");
  }
  Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  Vector phases = (-kI * t * es.eigenvalues().cast<Complex>().array()).exp().matrix();
  return {h.n_qubits(), es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint()};
}

}  // namespace cqec
