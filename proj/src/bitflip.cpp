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

#include "cqec/bitflip.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "cqec/errors.hpp"

namespace cqec::bitflip {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kDropTol = 1e-12;

struct KetBra {
  std::string_view ket;
  std::string_view bra;
};

// Each detection term writes the syndrome of a single flip into the ancillas.
constexpr std::array<KetBra, 6> kDetectionTerms{{
    {"00101", "00100"},
    {"11001", "11000"},
    {"10010", "10000"},
    {"01110", "01100"},
    {"01011", "01000"},
    {"10111", "10100"},
}};

// Each correction term undoes the flip flagged by the ancillas, leaving the
// ancillas excited for the cooling to remove.
constexpr std::array<KetBra, 6> kCorrectionTerms{{
    {"00001", "00101"},
    {"11101", "11001"},
    {"00010", "10010"},
    {"11110", "01110"},
    {"00011", "01011"},
    {"11111", "10111"},
}};

template <std::size_t N>
Operator hermitian_sum(const std::array<KetBra, N>& terms) {
  Operator h = Operator::zero(kModelQubits);
  for (const auto& t : terms) {
    const Operator kb = Operator::ket_bra(t.ket, t.bra);
    h += kb;
    h += kb.adjoint();
  }
  return h;
}

Operator on_qubit(int qubit, const Matrix& single, int n_qubits) {
  std::vector<Operator> factors;
  for (int q = 0; q < n_qubits; ++q) {
    factors.push_back(q == qubit ? Operator(1, single) : Operator::identity(1));
  }
  return kron_list(factors);
}

Matrix lowering() {
  Matrix s(2, 2);
  s << 0, 1, 0, 0;
  return s;
}

int sign_of(double expectation, const char* name) {
  if (std::abs(expectation - 1.0) < 1e-9) return +1;
  if (std::abs(expectation + 1.0) < 1e-9) return -1;
  std::ostringstream os;
  os << "state is not an eigenstate of " << name << " (expectation " << expectation << ")";
  throw ValidationError(os.str());
}

}  // namespace

LogicalState::LogicalState(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
  const double n2 = std::norm(alpha) + std::norm(beta);
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw ValidationError("logical amplitudes must satisfy |alpha|^2 + |beta|^2 = 1, got " + std::to_string(n2));
  }
}

CodeModel code_model() {
  CodeModel m{
      Operator::ket_bra("000", "000") + Operator::ket_bra("111", "111"),
      pauli_string("ZZI"),
      pauli_string("IZZ"),
      {"XII", "IXI", "IIX"},
      {},
  };
  for (int a : {+1, -1}) {
    for (int b : {+1, -1}) m.correction_table[{a, b}] = correction_for({a, b});
  }
  return m;
}

std::optional<std::string> correction_for(Syndrome s) {
  if (s.zzi == +1 && s.izz == +1) return std::nullopt;
  if (s.zzi == -1 && s.izz == +1) return "XII";
  if (s.zzi == +1 && s.izz == -1) return "IIX";
  if (s.zzi == -1 && s.izz == -1) return "IXI";
  throw ValidationError("syndrome signs must be +1 or -1");
}

StateVector encode(const LogicalState& psi) {
  Vector v = Vector::Zero(8);
  v(0b000) = psi.alpha();
  v(0b111) = psi.beta();
  return {kCodeQubits, std::move(v)};
}

Syndrome syndrome_signs(const StateVector& state) {
  if (state.n_qubits() != kCodeQubits) throw DimensionError("syndrome_signs expects a 3-qubit state");
  if (std::abs(state.norm() - 1.0) > 1e-9) throw ValidationError("syndrome_signs expects a normalized state");
  const Vector& v = state.amplitudes();
  auto expect = [&](const Operator& op) { return (v.adjoint() * op.matrix() * v)(0, 0).real(); };
  return {sign_of(expect(pauli_string("ZZI")), "ZZI"), sign_of(expect(pauli_string("IZZ")), "IZZ")};
}

Operator build_detection_hamiltonian() { return hermitian_sum(kDetectionTerms); }

Operator build_correction_hamiltonian() { return hermitian_sum(kCorrectionTerms); }

Operator build_coupling_hamiltonian() {
  const Operator hd = build_detection_hamiltonian();
  const Operator hc = build_correction_hamiltonian();
  return hd + hc + kI * commutator(hd, hc);
}

MasterEquationSpec build_model(const ModelRates& r) {
  for (auto [name, v] : {std::pair{"gamma", r.gamma}, {"kappa", r.kappa}, {"lambda", r.lambda}}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string(name) + " must be a nonnegative rate, got " + std::to_string(v));
    }
  }
  const Matrix x = pauli_string("X").matrix();
  std::vector<DissipatorTerm> terms;
  for (int q = 0; q < kCodeQubits; ++q) terms.push_back({r.gamma, on_qubit(q, x, kModelQubits)});
  for (int q = kCodeQubits; q < kModelQubits; ++q) terms.push_back({r.lambda, on_qubit(q, lowering(), kModelQubits)});
  if (r.errors_on_ancillas) {
    for (int q = kCodeQubits; q < kModelQubits; ++q) terms.push_back({r.gamma, on_qubit(q, x, kModelQubits)});
  }
  return {build_coupling_hamiltonian(), r.kappa, std::move(terms)};
}

DensityMatrix initial_state(const LogicalState& psi) {
  return DensityMatrix::pure(kron(encode(psi), StateVector::basis("00")));
}

double fidelity(const DensityMatrix& rho_full, const LogicalState& psi) {
  if (rho_full.n_qubits() != kModelQubits) {
    throw DimensionError("fidelity expects a " + std::to_string(kModelQubits) + "-qubit state, got " +
                         std::to_string(rho_full.n_qubits()));
  }
  const Matrix reduced = partial_trace(rho_full.matrix(), kModelQubits, {0, 1, 2});
  const Vector v = encode(psi).amplitudes();
  const Complex f = (v.adjoint() * reduced * v)(0, 0);
  if (std::abs(f.imag()) > 1e-9 || f.real() < -1e-9 || f.real() > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "fidelity " << f << " is outside [0, 1]";
    throw ValidationError(os.str());
  }
  return std::clamp(f.real(), 0.0, 1.0);
}

// --- Pauli decomposition ----------------------------------------------------

Operator PauliDecomposition::reconstruct() const {
  Operator out = Operator::zero(n_qubits);
  for (const auto& [s, c] : terms) out += Complex{c} * pauli_string(s);
  return out;
}

PauliDecomposition pauli_decomposition(const Operator& h) {
  if (!h.is_hermitian(1e-12)) throw ValidationError("pauli_decomposition requires a Hermitian operator");
  const int n = h.n_qubits();
  if (n > 8) throw GuardError("pauli_decomposition is limited to 8 qubits");
  PauliDecomposition out{n, {}};
  const double scale = 1.0 / static_cast<double>(h.dim());
  const std::size_t count = std::size_t{1} << (2 * n);
  std::string s(static_cast<std::size_t>(n), 'I');
  for (std::size_t code = 0; code < count; ++code) {
    for (int q = 0; q < n; ++q) s[q] = "IXYZ"[(code >> (2 * (n - 1 - q))) & 3];
    const Complex c = (pauli_string(s).matrix() * h.matrix()).trace() * scale;
    if (std::abs(c) < kDropTol) continue;
    if (std::abs(c.imag()) > kDropTol) throw ValidationError("Pauli coefficient of " + s + " is not real");
    out.terms.emplace(s, c.real());
  }
  return out;
}

std::map<std::string, int> expand_factored(const std::vector<FactoredGroup>& groups) {
  std::map<std::string, int> out;
  for (const auto& g : groups) {
    std::istringstream in{std::string(g.signed_terms)};
    std::string tok;
    while (in >> tok) {
      if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-')) {
        throw ValidationError("factored term '" + tok + "' must start with a sign");
      }
      const std::string body = tok.substr(1);
      const std::string full = g.fixed_is_prefix ? std::string(g.fixed) + body : body + std::string(g.fixed);
      if (!out.emplace(full, tok[0] == '+' ? +1 : -1).second) {
        throw ValidationError("factored expression repeats " + full);
      }
    }
  }
  return out;
}

std::map<std::string, int> factored_detection_signs() {
  return expand_factored({
      {"III", true, "+IX +XI +XX +XZ -YY +ZX"},
      {"IZZ", true, "-IX +XI -XX +XZ +YY -ZX"},
      {"ZIZ", true, "-IX -XI +XX -XZ -YY -ZX"},
      {"ZZI", true, "+IX -XI -XX -XZ +YY +ZX"},
  });
}

std::map<std::string, int> factored_correction_signs() {
  return expand_factored({
      {"II", false, "+IIX +IXI +XII +XZZ +ZXZ +ZZX"},
      {"IZ", false, "-IIX -IXI +XII +XZZ -ZXZ -ZZX"},
      {"ZI", false, "+IIX -IXI -XII -XZZ -ZXZ +ZZX"},
      {"ZZ", false, "-IIX +IXI -XII -XZZ +ZXZ -ZZX"},
  });
}

DecompositionCheck compare_with_signs(const PauliDecomposition& dec, const std::map<std::string, int>& signs) {
  DecompositionCheck out;
  out.n_terms = dec.terms.size();
  out.strings_match = dec.terms.size() == signs.size();
  out.signs_match = out.strings_match;
  for (const auto& [s, c] : dec.terms) {
    auto it = signs.find(s);
    if (it == signs.end()) {
      out.strings_match = out.signs_match = false;
      continue;
    }
    if ((c > 0 ? +1 : -1) != it->second) out.signs_match = false;
  }
  if (!dec.terms.empty()) {
    out.magnitude = std::abs(dec.terms.begin()->second);
    out.uniform_magnitude = true;
    for (const auto& [s, c] : dec.terms) {
      if (std::abs(std::abs(c) - out.magnitude) > 1e-12) out.uniform_magnitude = false;
    }
  }
  return out;
}

}  // namespace cqec::bitflip
