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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace cqec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Largest absolute entry of a matrix (the max-norm used by every tolerance check).
double max_abs(const Matrix& m);

/// Dense operator on n qubits. Qubit 1 is the leftmost tensor factor, i.e. the
/// most significant bit of the computational basis index.
class Operator {
 public:
  Operator(int n_qubits, Matrix entries);

  static Operator identity(int n_qubits);
  static Operator zero(int n_qubits);
  /// |ket><bra| for two bit strings of equal length such as "00101".
  static Operator ket_bra(std::string_view ket, std::string_view bra);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  Operator adjoint() const;
  Complex trace() const { return m_.trace(); }
  bool is_hermitian(double tol = 1e-10) const;
  /// max |A - A^dag|
  double hermiticity_error() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);
  friend Operator operator*(const Operator& a, Complex s) { return s * a; }

 private:
  int n_qubits_;
  Matrix m_;
};

void require_same_dim(const Operator& a, const Operator& b, std::string_view what);

/// Pure state on n qubits. Normalized unless built with `unnormalized`.
class StateVector {
 public:
  StateVector(int n_qubits, Vector amplitudes);

  /// Skips the unit-norm check; for projected states whose norm carries meaning.
  static StateVector unnormalized(int n_qubits, Vector amplitudes);
  static StateVector basis(std::string_view bits);
  static StateVector basis(int n_qubits, Eigen::Index index);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return v_.size(); }
  const Vector& amplitudes() const { return v_; }
  double norm() const { return v_.norm(); }

  friend StateVector operator*(const Operator& op, const StateVector& psi);
  friend StateVector kron(const StateVector& a, const StateVector& b);

 private:
  struct Unchecked {};
  StateVector(int n_qubits, Vector amplitudes, Unchecked);

  int n_qubits_;
  Vector v_;
};

/// Hermitian, unit-trace, numerically positive operator.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-9;
  static constexpr double kPositivityTol = 1e-8;

  explicit DensityMatrix(Operator op);

  static DensityMatrix pure(const StateVector& psi);

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  int n_qubits() const { return op_.n_qubits(); }
  Eigen::Index dim() const { return op_.dim(); }

  double min_eigenvalue() const;
  /// <psi|rho|psi>, real part.
  double expectation(const StateVector& psi) const;

 private:
  Operator op_;
};

double min_eigenvalue_hermitian(const Matrix& m);

/// Tensor product of Pauli letters, e.g. "ZZI" = Z (x) Z (x) I.
Operator pauli_string(std::string_view spec);

Operator kron(const Operator& a, const Operator& b);
Operator kron_list(std::span<const Operator> ops);
Operator kron_list(std::initializer_list<Operator> ops);

/// Reduced state on the qubits in `keep` (0-based, any order; the result keeps
/// the original relative order).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
/// Same, on an arbitrary square matrix (no density-matrix validation).
Matrix partial_trace(const Matrix& m, int n_qubits, const std::vector<int>& keep);

Operator commutator(const Operator& a, const Operator& b);

/// exp(-i h t) for Hermitian h, via eigendecomposition.
Operator expm_hermitian(const Operator& h, double t);

}  // namespace cqec
