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

#include <doctest.h>

#include <array>
#include <cmath>
#include <map>

#include "cqec/bitflip.hpp"
#include "cqec/errors.hpp"
#include "cqec/experiments.hpp"
#include "test_support.hpp"

using namespace cqec;
using namespace cqec::bitflip;

namespace {

using SymbolicSum = std::map<std::string, Complex>;

// Single-qubit |a><b| as a combination of I, X, Y, Z.
SymbolicSum single_ket_bra(char a, char b) {
  const Complex h{0.5, 0.0}, ih{0.0, 0.5};
  if (a == '0' && b == '0') return {{"I", h}, {"Z", h}};
  if (a == '1' && b == '1') return {{"I", h}, {"Z", -h}};
  if (a == '0' && b == '1') return {{"X", h}, {"Y", ih}};
  return {{"X", h}, {"Y", -ih}};
}

// Symbolic Pauli expansion of |ket><bra| + h.c., independent of any matrix code.
SymbolicSum expand_hermitian_ket_bra(std::string_view ket, std::string_view bra) {
  SymbolicSum acc{{"", 1.0}};
  for (std::size_t q = 0; q < ket.size(); ++q) {
    SymbolicSum next;
    for (const auto& [prefix, c] : acc) {
      for (const auto& [p, d] : single_ket_bra(ket[q], bra[q])) next[prefix + p] += c * d;
    }
    acc = std::move(next);
  }
  SymbolicSum out;
  // Pauli strings are Hermitian, so the conjugate term carries conj(c).
  for (const auto& [s, c] : acc) out[s] += c + std::conj(c);
  return out;
}

std::map<std::string, double> expand_terms(const std::vector<std::pair<std::string, std::string>>& terms) {
  SymbolicSum total;
  for (const auto& [k, b] : terms) {
    for (const auto& [s, c] : expand_hermitian_ket_bra(k, b)) total[s] += c;
  }
  std::map<std::string, double> out;
  for (const auto& [s, c] : total) {
    REQUIRE(std::abs(c.imag()) < 1e-15);
    if (std::abs(c) > 1e-15) out[s] = c.real();
  }
  return out;
}

const std::vector<std::pair<std::string, std::string>> kDetection{
    {"00101", "00100"}, {"11001", "11000"}, {"10010", "10000"},
    {"01110", "01100"}, {"01011", "01000"}, {"10111", "10100"},
};
const std::vector<std::pair<std::string, std::string>> kCorrection{
    {"00001", "00101"}, {"11101", "11001"}, {"00010", "10010"},
    {"11110", "01110"}, {"00011", "01011"}, {"11111", "10111"},
};

Vector basis_vec(const char* bits) { return StateVector::basis(bits).amplitudes(); }

void check_decomposition_equals(const PauliDecomposition& dec, const std::map<std::string, double>& oracle) {
  CHECK(dec.terms.size() == oracle.size());
  for (const auto& [s, c] : oracle) {
    CAPTURE(s);
    auto it = dec.terms.find(s);
    REQUIRE(it != dec.terms.end());
    CHECK(std::abs(it->second - c) < 1e-12);
  }
}

}  // namespace

TEST_CASE("detection and correction Hamiltonians act on single flips") {
  const Operator hd = build_detection_hamiltonian();
  const Operator hc = build_correction_hamiltonian();
  // Flip on qubit 3 of the code (|001>) raises ancilla 2.
  CHECK(max_abs(hd.matrix() * basis_vec("00100") - basis_vec("00101")) == 0.0);
  CHECK(max_abs(hc.matrix() * basis_vec("00101") - basis_vec("00001")) == 0.0);
  // Flip on qubit 1 raises ancilla 1; the correction restores the code word.
  CHECK(max_abs(hd.matrix() * basis_vec("10000") - basis_vec("10010")) == 0.0);
  CHECK(max_abs(hc.matrix() * basis_vec("10010") - basis_vec("00010")) == 0.0);
  // Flip on qubit 2 raises both ancillas.
  CHECK(max_abs(hd.matrix() * basis_vec("01000") - basis_vec("01011")) == 0.0);
  CHECK(max_abs(hc.matrix() * basis_vec("01011") - basis_vec("00011")) == 0.0);
}

TEST_CASE("coupling Hamiltonians are Hermitian and vanish on the code space") {
  const Operator hd = build_detection_hamiltonian();
  const Operator hc = build_correction_hamiltonian();
  const Operator h = build_coupling_hamiltonian();
  for (const Operator* op : {&hd, &hc, &h}) {
    CHECK(op->hermiticity_error() < 1e-15);
    CHECK(max_abs(op->matrix() * basis_vec("00000")) < 1e-15);
    CHECK(max_abs(op->matrix() * basis_vec("11100")) < 1e-15);
  }
  // The commutator term is not trivially zero.
  CHECK(max_abs(commutator(hd, hc).matrix()) > 0.5);
}

TEST_CASE("pauli_decomposition") {
  SUBCASE("single Pauli string") {
    const auto dec = pauli_decomposition(pauli_string("ZIIII"));
    REQUIRE(dec.terms.size() == 1);
    CHECK(dec.terms.at("ZIIII") == doctest::Approx(1.0));
  }
  SUBCASE("reconstructs random Hermitian operators") {
    std::mt19937 rng(31);
    for (int n = 1; n <= 3; ++n) {
      const Operator h = testing::random_hermitian(n, rng);
      CHECK(max_abs(pauli_decomposition(h).reconstruct().matrix() - h.matrix()) < 1e-12);
    }
  }
  SUBCASE("rejects non-Hermitian input") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(pauli_decomposition(Operator(1, m)), ValidationError);
  }
}

TEST_CASE("detection Hamiltonian matches the symbolic ket-bra expansion") {
  const auto dec = pauli_decomposition(build_detection_hamiltonian());
  check_decomposition_equals(dec, expand_terms(kDetection));
  CHECK(dec.terms.size() == 24);
  CHECK(max_abs(dec.reconstruct().matrix() - build_detection_hamiltonian().matrix()) < 1e-12);
}

TEST_CASE("correction Hamiltonian matches the symbolic ket-bra expansion") {
  const auto dec = pauli_decomposition(build_correction_hamiltonian());
  check_decomposition_equals(dec, expand_terms(kCorrection));
  CHECK(dec.terms.size() == 24);
}

TEST_CASE("factored sign tables agree with the decompositions") {
  const auto check_d = compare_with_signs(pauli_decomposition(build_detection_hamiltonian()), factored_detection_signs());
  CHECK(check_d.strings_match);
  CHECK(check_d.signs_match);
  CHECK(check_d.uniform_magnitude);
  CHECK(check_d.magnitude == doctest::Approx(0.125));

  const auto check_c =
      compare_with_signs(pauli_decomposition(build_correction_hamiltonian()), factored_correction_signs());
  CHECK(check_c.ok());
  CHECK(check_c.magnitude == doctest::Approx(0.125));

  // A single flipped sign is detected.
  auto signs = factored_detection_signs();
  signs.begin()->second *= -1;
  const auto bad = compare_with_signs(pauli_decomposition(build_detection_hamiltonian()), signs);
  CHECK(bad.strings_match);
  CHECK_FALSE(bad.signs_match);
}

TEST_CASE("expand_factored") {
  const auto m = expand_factored({{"Z", true, "+X -Y"}, {"I", false, "+Z"}});
  CHECK(m == std::map<std::string, int>{{"ZX", 1}, {"ZY", -1}, {"ZI", 1}});
  CHECK_THROWS_AS(expand_factored({{"Z", true, "X"}}), ValidationError);
  CHECK_THROWS_AS(expand_factored({{"Z", true, "+X +X"}}), ValidationError);
}

TEST_CASE("build_model") {
  const auto spec = build_model({0.05, 100.0, 250.0, false});
  CHECK(spec.n_qubits() == 5);
  CHECK(spec.ham_strength() == 100.0);
  REQUIRE(spec.dissipators().size() == 5);
  const std::array<double, 5> rates{0.05, 0.05, 0.05, 250.0, 250.0};
  for (std::size_t k = 0; k < 5; ++k) CHECK(spec.dissipators()[k].rate == rates[k]);
  // Cooling lowers ancilla 1: |00010> -> |00000>.
  CHECK(max_abs(spec.dissipators()[3].jump.matrix() * basis_vec("00010") - basis_vec("00000")) == 0.0);
  CHECK(max_abs(spec.dissipators()[0].jump.matrix() - pauli_string("XIIII").matrix()) == 0.0);

  CHECK(build_model({0.05, 100.0, 250.0, true}).dissipators().size() == 7);
  CHECK_THROWS_AS(build_model({-0.1, 100.0, 250.0, false}), ValidationError);
  CHECK_THROWS_AS(build_model({0.1, 100.0, std::nan(""), false}), ValidationError);
}

TEST_CASE("encode and fidelity") {
  const LogicalState plus(std::sqrt(0.5), std::sqrt(0.5));
  Vector expected = Vector::Zero(8);
  expected(0) = expected(7) = std::sqrt(0.5);
  CHECK(max_abs(encode(plus).amplitudes() - expected) < 1e-15);

  const LogicalState zero(1.0, 0.0), one(0.0, 1.0);
  CHECK(fidelity(initial_state(zero), zero) == doctest::Approx(1.0));
  CHECK(fidelity(initial_state(zero), one) == doctest::Approx(0.0));
  CHECK(fidelity(initial_state(zero), plus) == doctest::Approx(0.5));

  // Ancilla excitation does not change the code fidelity.
  const DensityMatrix excited = DensityMatrix::pure(kron(encode(plus), StateVector::basis("11")));
  CHECK(fidelity(excited, plus) == doctest::Approx(1.0));

  CHECK_THROWS_AS(LogicalState(1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(fidelity(DensityMatrix::pure(StateVector::basis("000")), zero), DimensionError);
}

TEST_CASE("syndrome table") {
  CHECK(syndrome_signs(StateVector::basis("000")) == Syndrome{+1, +1});
  CHECK(syndrome_signs(StateVector::basis("111")) == Syndrome{+1, +1});
  CHECK(syndrome_signs(StateVector::basis("100")) == Syndrome{-1, +1});
  CHECK(syndrome_signs(StateVector::basis("010")) == Syndrome{-1, -1});
  CHECK(syndrome_signs(StateVector::basis("001")) == Syndrome{+1, -1});
  CHECK(syndrome_signs(StateVector::basis("011")) == Syndrome{-1, +1});

  Vector v = Vector::Zero(8);
  v(0) = v(4) = std::sqrt(0.5);  // |000> + |100> mixes syndromes
  CHECK_THROWS_AS(syndrome_signs(StateVector(3, v)), ValidationError);

  CHECK_FALSE(correction_for({+1, +1}).has_value());
  CHECK(correction_for({-1, +1}) == "XII");
  CHECK(correction_for({+1, -1}) == "IIX");
  CHECK(correction_for({-1, -1}) == "IXI");
}

TEST_CASE("every single flip is detected and corrected") {
  std::mt19937 rng(32);
  const CodeModel code = code_model();
  const Matrix& p = code.codespace_projector.matrix();
  for (int trial = 0; trial < 5; ++trial) {
    const StateVector s = testing::random_state(1, rng);
    const LogicalState psi(s.amplitudes()(0), s.amplitudes()(1));
    const StateVector enc = encode(psi);
    for (const auto& e : code.error_ops) {
      CAPTURE(e);
      const Operator err = pauli_string(e);
      // Knill-Laflamme: the error moves the code space to an orthogonal subspace.
      CHECK(max_abs(p * err.matrix() * p) < 1e-15);
      const StateVector hit = err * enc;
      const auto fix = correction_for(syndrome_signs(hit));
      REQUIRE(fix.has_value());
      const StateVector restored = pauli_string(*fix) * hit;
      CHECK(max_abs(restored.amplitudes() - enc.amplitudes()) < 1e-14);
    }
  }
}

TEST_CASE("syndrome operators stabilize the code words and commute") {
  const CodeModel code = code_model();
  const Matrix& zzi = code.syndrome_zzi.matrix();
  const Matrix& izz = code.syndrome_izz.matrix();
  CHECK(max_abs(zzi * izz - izz * zzi) == 0.0);
  for (const char* w : {"000", "111"}) {
    CHECK(max_abs(zzi * basis_vec(w) - basis_vec(w)) == 0.0);
    CHECK(max_abs(izz * basis_vec(w) - basis_vec(w)) == 0.0);
  }
}

TEST_CASE("flips on the ancillas leave F(T) nearly unchanged") {
  experiments::SimulationConfig cfg;
  cfg.horizon = 2.0;
  cfg.output_intervals = 20;
  const double plain = experiments::run_fidelity_curve(cfg).trace.final_value();
  cfg.errors_on_ancillas = true;
  const double noisy = experiments::run_fidelity_curve(cfg).trace.final_value();
  CHECK(noisy <= plain + 1e-12);
  CHECK(plain - noisy < 2e-2);
}
