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

#include <functional>
#include <optional>
#include <vector>

#include "cqec/operator.hpp"

namespace cqec {

struct DissipatorTerm {
  double rate;
  Operator jump;
};

/// d rho/dt = -i kappa [H, rho] + sum_k rate_k D[A_k] rho
class MasterEquationSpec {
 public:
  MasterEquationSpec(Operator hamiltonian, double ham_strength, std::vector<DissipatorTerm> dissipators);

  /// Zero Hamiltonian, no dissipators.
  static MasterEquationSpec frozen(int n_qubits);

  const Operator& hamiltonian() const { return hamiltonian_; }
  double ham_strength() const { return ham_strength_; }
  const std::vector<DissipatorTerm>& dissipators() const { return dissipators_; }
  int n_qubits() const { return hamiltonian_.n_qubits(); }
  Eigen::Index dim() const { return hamiltonian_.dim(); }

  /// Largest of |kappa| and the dissipator rates.
  double stiffest_rate() const;

 private:
  Operator hamiltonian_;
  double ham_strength_;
  std::vector<DissipatorTerm> dissipators_;
};

/// D[A] rho = A rho A^dag - 1/2 A^dag A rho - 1/2 rho A^dag A
Operator dissipator(const Operator& a, const DensityMatrix& rho);

/// Right-hand side of the master equation, evaluated densely term by term.
Operator rhs(const MasterEquationSpec& spec, const DensityMatrix& rho);

/// Column-stacking superoperator L with vec(rhs(rho)) = L vec(rho).
/// Requires d^2 <= 4096.
Matrix liouvillian_matrix(const MasterEquationSpec& spec);

/// Dense exp(L t) by Pade scaling and squaring.
Matrix propagator_matrix(const MasterEquationSpec& spec, double t);

/// exp(L t) vec(rho0), reshaped: the action of the propagator summed as a
/// Taylor series in substeps of 1-norm at most 1, to full double precision.
Matrix propagate_exact(const MasterEquationSpec& spec, const DensityMatrix& rho0, double t);

/// The generator precompiled for repeated evaluation. The anti-Hermitian part
/// is folded into H_eff = kappa H - i/2 sum r A^dag A, so
///   rhs(rho) = -i H_eff rho + i rho H_eff^dag + sum r A rho A^dag,
/// and every factor is stored as a list of its nonzero entries.
class CompiledGenerator {
 public:
  explicit CompiledGenerator(const MasterEquationSpec& spec);

  /// out = rhs(rho). `out` is resized as needed.
  void apply(const Matrix& rho, Matrix& out) const;
  Matrix apply(const Matrix& rho) const;

 private:
  struct Entry {
    Eigen::Index row;
    Eigen::Index col;
    Complex value;
  };
  struct Jump {
    double rate;
    std::vector<Entry> entries;
  };
  std::vector<Entry> minus_i_heff_;  // -i H_eff
  std::vector<Entry> i_heff_adj_;    // +i H_eff^dag
  std::vector<Jump> jumps_;
};

/// Default RK4 step: min(0.1 / max(stiffest rate, 1), 1e-3).
double default_step(const MasterEquationSpec& spec);

using Observable = std::function<double(const DensityMatrix&)>;

struct IntegrateOptions {
  /// Upper bound on the RK4 step; defaults to `default_step(spec)`.
  std::optional<double> step_hint;
  /// Number of uniform output intervals; samples are taken at k*T/output_intervals.
  int output_intervals = 1000;
  /// Keep the full density matrix at every sample (otherwise only the final one).
  bool keep_states = false;
};

/// Worst-case conservation errors seen over the recorded samples.
struct ConservationStats {
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 1.0;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> values;             // recorder output, if a recorder was given
  std::vector<DensityMatrix> states;      // only with keep_states
  std::optional<DensityMatrix> final_state;
  ConservationStats stats;
  double step = 0.0;
};

/// Fixed-step classical RK4. Throws IntegrationError if the trace drifts by
/// more than 1e-6 or an eigenvalue drops below -1e-6 at any sample.
TrajectoryRecord integrate(const MasterEquationSpec& spec, const DensityMatrix& rho0, double t_final,
                           const Observable& recorder = {}, const IntegrateOptions& options = {});

}  // namespace cqec
