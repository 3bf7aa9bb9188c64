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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cqec/lindblad.hpp"
#include "cqec/operator.hpp"

namespace cqec::bitflip {

// Register layout of the continuous model: qubits 0-2 carry the code, qubit 3
// is ancilla 1 (syndrome ZZI) and qubit 4 is ancilla 2 (syndrome IZZ).
inline constexpr int kCodeQubits = 3;
inline constexpr int kAncillaQubits = 2;
inline constexpr int kModelQubits = kCodeQubits + kAncillaQubits;

/// alpha|0>_L + beta|1>_L
class LogicalState {
 public:
  LogicalState(Complex alpha, Complex beta);

  Complex alpha() const { return alpha_; }
  Complex beta() const { return beta_; }

 private:
  Complex alpha_;
  Complex beta_;
};

/// Syndrome signs (<ZZI>, <IZZ>), each +1 or -1.
struct Syndrome {
  int zzi;
  int izz;
  friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

struct CodeModel {
  Operator codespace_projector;          // |000><000| + |111><111|
  Operator syndrome_zzi;
  Operator syndrome_izz;
  std::vector<std::string> error_ops;    // XII, IXI, IIX
  /// Syndrome -> correcting Pauli string; empty optional means no correction.
  std::map<std::pair<int, int>, std::optional<std::string>> correction_table;
};

CodeModel code_model();

/// Correcting unitary for a syndrome, as a Pauli string; nullopt for (+1, +1).
std::optional<std::string> correction_for(Syndrome s);

StateVector encode(const LogicalState& psi);

/// Signs of <ZZI> and <IZZ>; throws unless the state is a joint eigenstate.
Syndrome syndrome_signs(const StateVector& state);

Operator build_detection_hamiltonian();
Operator build_correction_hamiltonian();
/// H_D + H_C + i[H_D, H_C]
Operator build_coupling_hamiltonian();

struct ModelRates {
  double gamma = 0.05;
  double kappa = 100.0;
  double lambda = 250.0;
  bool errors_on_ancillas = false;
};

/// Bit-flip errors (rate gamma) on the code qubits, cooling (rate lambda) of
/// both ancillas via S-, and the coupling Hamiltonian at strength kappa.
MasterEquationSpec build_model(const ModelRates& rates);

/// Full initial state encode(psi) (x) |00><00|.
DensityMatrix initial_state(const LogicalState& psi);

/// <psi_enc| Tr_ancilla(rho) |psi_enc>
double fidelity(const DensityMatrix& rho_full, const LogicalState& psi);

/// Real coefficients c_P = Tr(P h) / 2^n keyed by Pauli string.
struct PauliDecomposition {
  int n_qubits = 0;
  std::map<std::string, double> terms;

  Operator reconstruct() const;
};

PauliDecomposition pauli_decomposition(const Operator& h);

/// Signs of the coupling Hamiltonians written in factored Pauli form, one
/// fixed factor times a signed sum. Returned as string -> +1/-1.
std::map<std::string, int> factored_detection_signs();
std::map<std::string, int> factored_correction_signs();

/// Expands groups such as {"III", "+IX +XI -YY"} (prefix) or {"II", "+IIX -ZZX"}
/// (suffix) into a sign map.
struct FactoredGroup {
  std::string_view fixed;
  bool fixed_is_prefix;
  std::string_view signed_terms;
};
std::map<std::string, int> expand_factored(const std::vector<FactoredGroup>& groups);

struct DecompositionCheck {
  bool strings_match = false;
  bool signs_match = false;
  bool uniform_magnitude = false;
  double magnitude = 0.0;
  std::size_t n_terms = 0;

  bool ok() const { return strings_match && signs_match && uniform_magnitude; }
};

/// Compares a decomposition against a sign map: same string set, same signs,
/// one common magnitude.
DecompositionCheck compare_with_signs(const PauliDecomposition& dec, const std::map<std::string, int>& signs);

}  // namespace cqec::bitflip
