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

#include "cqec/zeno.hpp"

#include <cmath>
#include <string>

#include "cqec/errors.hpp"

namespace cqec::zeno {

namespace {

constexpr int kMaxQubits = 10;
constexpr double kSurvivalFloor = 1e-12;

// Bits of a 5-qubit basis index, qubit 0 most significant.
int bit(int index, int qubit) { return (index >> (bitflip::kModelQubits - 1 - qubit)) & 1; }

Operator permutation(bool with_correction) {
  const int d = 1 << bitflip::kModelQubits;
  Matrix u = Matrix::Zero(d, d);
  for (int in = 0; in < d; ++in) {
    int q[3] = {bit(in, 0), bit(in, 1), bit(in, 2)};
    const int a1 = bit(in, 3) ^ q[0] ^ q[1];
    const int a2 = bit(in, 4) ^ q[1] ^ q[2];
    if (with_correction) {
      // Ancilla pattern -> flagged qubit, following the syndrome table.
      if (a1 && !a2) q[0] ^= 1;
      if (a1 && a2) q[1] ^= 1;
      if (!a1 && a2) q[2] ^= 1;
    }
    const int out = (q[0] << 4) | (q[1] << 3) | (q[2] << 2) | (a1 << 1) | a2;
    u(out, in) = 1.0;
  }
  return {bitflip::kModelQubits, std::move(u)};
}

void check_config(const ZenoConfig& cfg) {
  if (cfg.n_env < 3) throw ValidationError("zeno: n_env must be at least 3 (one environment qubit per error)");
  if (cfg.total_qubits() > kMaxQubits) {
    throw GuardError("zeno: register of " + std::to_string(cfg.total_qubits()) + " qubits exceeds dimension 1024");
  }
  if (cfg.cycles < 1) throw ValidationError("zeno: cycle count must be positive");
  if (!(cfg.total_time > 0.0)) throw ValidationError("zeno: total time must be positive");
  if (cfg.env_basis_index < 0 || cfg.env_basis_index >= (1 << cfg.n_env)) {
    throw ValidationError("zeno: environment basis index out of range");
  }
}

}  // namespace

Operator build_cycle_unitary() { return permutation(true); }

Operator build_syndrome_extraction_unitary() { return permutation(false); }

Operator build_system_env_hamiltonian(int n_env, double epsilon) {
  if (n_env < 3) throw ValidationError("system-environment coupling needs n_env >= 3");
  const int n = bitflip::kModelQubits + n_env;
  Operator h = Operator::zero(n);
  for (int k = 0; k < bitflip::kCodeQubits; ++k) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[k] = 'X';
    s[bitflip::kModelQubits + k] = 'X';
    h += Complex{epsilon} * pauli_string(s);
  }
  return h;
}

CycleOperators build_cycle_operators(const ZenoConfig& cfg) {
  check_config(cfg);
  return {
      cfg.apply_correction ? build_cycle_unitary() : Operator::identity(bitflip::kModelQubits),
      kron(Operator::identity(bitflip::kCodeQubits), Operator::ket_bra("00", "00")),
      kron(bitflip::code_model().codespace_projector, Operator::identity(bitflip::kAncillaQubits)),
      build_system_env_hamiltonian(cfg.n_env, cfg.epsilon),
  };
}

PupCheck verify_pup_property(const Operator& u_as) {
  const Operator p_a = kron(Operator::identity(bitflip::kCodeQubits), Operator::ket_bra("00", "00"));
  const Operator pi_s = kron(bitflip::code_model().codespace_projector, Operator::identity(bitflip::kAncillaQubits));
  const double dev = max_abs((p_a * u_as * p_a - p_a * pi_s).matrix());
  return {dev < 1e-10, dev};
}

PupCheck verify_pup_property(const CycleOperators& ops) {
  const double dev = max_abs((ops.p_a * ops.u_as * ops.p_a - ops.p_a * ops.pi_s).matrix());
  return {dev < 1e-10, dev};
}

std::vector<KlResult> verify_kl_condition(const std::vector<Operator>& errors) {
  const Operator pi = bitflip::code_model().codespace_projector;
  std::vector<KlResult> out;
  for (const auto& e : errors) {
    if (e.n_qubits() != bitflip::kCodeQubits) throw DimensionError("KL check expects 3-qubit errors");
    const double dev = max_abs((pi * e * pi).matrix());
    out.push_back({dev < 1e-12, dev});
  }
  return out;
}

double effective_hamiltonian_norm(const CycleOperators& ops, int n_env) {
  const Operator proj = kron(ops.p_a * ops.pi_s, Operator::identity(n_env));
  return max_abs((proj * ops.h_se * proj).matrix());
}

ZenoRunReport run_zeno_cycles(const ZenoConfig& cfg) {
  const CycleOperators ops = build_cycle_operators(cfg);
  const Operator env_id = Operator::identity(cfg.n_env);
  const Matrix step = expm_hermitian(ops.h_se, cfg.tau()).matrix();
  const Matrix correct = kron(ops.u_as, env_id).matrix();
  const Matrix project = kron(ops.p_a, env_id).matrix();

  const StateVector phi0 =
      kron(kron(bitflip::encode(cfg.psi0), StateVector::basis("00")), StateVector::basis(cfg.n_env, cfg.env_basis_index));
  Vector phi = phi0.amplitudes();

  ZenoRunReport report{1.0, 0.0, 0.0, {}};
  report.per_cycle_norms.reserve(static_cast<std::size_t>(cfg.cycles));
  for (int n = 1; n <= cfg.cycles; ++n) {
    phi = step * phi;
    phi = correct * phi;
    if (cfg.project_ancillas) phi = project * phi;
    const double norm = phi.norm();
    report.per_cycle_norms.push_back(norm);
    if (norm * norm < kSurvivalFloor) {
      throw GuardError("zeno: survival probability underflow at cycle " + std::to_string(n));
    }
  }
  const double norm = phi.norm();
  report.survival_probability = std::min(1.0, norm * norm);
  report.deviation = (phi - phi0.amplitudes()).norm();
  report.renormalized_deviation = (phi / norm - phi0.amplitudes()).norm();
  return report;
}

}  // namespace cqec::zeno
