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

#include <vector>

#include "cqec/bitflip.hpp"
#include "cqec/operator.hpp"

namespace cqec::zeno {

// Register order: system (3 code qubits) (x) ancilla (2) (x) environment (n_env).

struct ZenoConfig {
  int n_env = 3;
  double epsilon = 0.1;       // strength of each X_k^(S) X_k^(E) coupling
  double total_time = 1.0;
  int cycles = 8;
  bitflip::LogicalState psi0{1.0, 0.0};
  int env_basis_index = 0;
  /// Off replaces the detect/correct unitary by the identity.
  bool apply_correction = true;
  /// Off skips the ancilla projection.
  bool project_ancillas = true;

  double tau() const { return total_time / cycles; }
  int total_qubits() const { return bitflip::kModelQubits + n_env; }
};

struct CycleOperators {
  Operator u_as;  // 5-qubit detect + correct unitary
  Operator p_a;   // 5-qubit I_S (x) |00><00|_A
  Operator pi_s;  // 5-qubit Pi_S (x) I_A
  Operator h_se;  // full-register system-environment Hamiltonian
};

struct ZenoRunReport {
  double survival_probability;
  /// || |phi(t)> - |phi_0> || for the projected, unnormalized state.
  double deviation;
  /// Same, after renormalizing |phi(t)>.
  double renormalized_deviation;
  std::vector<double> per_cycle_norms;
};

/// Syndrome extraction (ancilla 1 ^= q1 ^ q2, ancilla 2 ^= q2 ^ q3) followed by
/// the syndrome-conditioned bit flip, as a 32x32 permutation matrix.
Operator build_cycle_unitary();
/// Syndrome extraction only, without the conditioned corrections.
Operator build_syndrome_extraction_unitary();

/// sum_k epsilon X_k^(S) (x) I_A (x) X_k^(E), k = 1..3, on the full register.
Operator build_system_env_hamiltonian(int n_env, double epsilon);

CycleOperators build_cycle_operators(const ZenoConfig& cfg);

struct PupCheck {
  bool holds;
  double max_deviation;
};

/// || P_A U P_A - P_A Pi_S ||_max < 1e-10
PupCheck verify_pup_property(const Operator& u_as);
PupCheck verify_pup_property(const CycleOperators& ops);

struct KlResult {
  bool holds;
  double max_deviation;
};

/// Pi_S E Pi_S == 0 (to 1e-12) for each 3-qubit error E.
std::vector<KlResult> verify_kl_condition(const std::vector<Operator>& errors);

/// max |(P_A Pi_S) H_SE (P_A Pi_S)| on the full register.
double effective_hamiltonian_norm(const CycleOperators& ops, int n_env);

/// Applies [P_A U_AS exp(-i H_SE tau)]^N to |psi0>_S |00>_A |e>_E.
/// Throws GuardError if the norm^2 drops below 1e-12.
ZenoRunReport run_zeno_cycles(const ZenoConfig& cfg);

}  // namespace cqec::zeno
