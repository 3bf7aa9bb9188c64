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

#include "cqec/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "cqec/errors.hpp"

namespace cqec {

namespace {

constexpr double kDivergenceTol = 1e-6;
constexpr Eigen::Index kMaxLiouvillianDim = 4096;
constexpr int kMaxTaylorTerms = 40;
constexpr double kTaylorTol = 1e-17;

template <typename Entry>
std::vector<Entry> nonzeros(const Matrix& m) {
  std::vector<Entry> out;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (m(r, c) != Complex{0.0}) out.push_back({r, c, m(r, c)});
    }
  }
  return out;
}

ConservationStats measure(const Matrix& rho) {
  ConservationStats s;
  s.max_trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
  s.max_hermiticity_error = max_abs(rho - rho.adjoint());
  s.min_eigenvalue = min_eigenvalue_hermitian(rho);
  return s;
}

void merge(ConservationStats& into, const ConservationStats& s) {
  into.max_trace_error = std::max(into.max_trace_error, s.max_trace_error);
  into.max_hermiticity_error = std::max(into.max_hermiticity_error, s.max_hermiticity_error);
  into.min_eigenvalue = std::min(into.min_eigenvalue, s.min_eigenvalue);
}

}  // namespace

// --- MasterEquationSpec -----------------------------------------------------

MasterEquationSpec::MasterEquationSpec(Operator hamiltonian, double ham_strength,
                                       std::vector<DissipatorTerm> dissipators)
    : hamiltonian_(std::move(hamiltonian)), ham_strength_(ham_strength), dissipators_(std::move(dissipators)) {
  if (!std::isfinite(ham_strength_)) throw ValidationError("Hamiltonian strength must be finite");
  for (std::size_t i = 0; i < dissipators_.size(); ++i) {
    const auto& d = dissipators_[i];
    if (!(d.rate >= 0.0) || !std::isfinite(d.rate)) {
      throw ValidationError("dissipator " + std::to_string(i) + " has invalid rate " + std::to_string(d.rate));
    }
    require_same_dim(hamiltonian_, d.jump, "dissipator " + std::to_string(i));
  }
}

MasterEquationSpec MasterEquationSpec::frozen(int n_qubits) { return {Operator::zero(n_qubits), 0.0, {}}; }

double MasterEquationSpec::stiffest_rate() const {
  double r = std::abs(ham_strength_);
  for (const auto& d : dissipators_) r = std::max(r, d.rate);
  return r;
}

// --- reference formulas -----------------------------------------------------

Operator dissipator(const Operator& a, const DensityMatrix& rho) {
  require_same_dim(a, rho.op(), "dissipator");
  const Matrix& A = a.matrix();
  const Matrix& r = rho.matrix();
  const Matrix ada = A.adjoint() * A;
  return {a.n_qubits(), A * r * A.adjoint() - 0.5 * ada * r - 0.5 * r * ada};
}

Operator rhs(const MasterEquationSpec& spec, const DensityMatrix& rho) {
  require_same_dim(spec.hamiltonian(), rho.op(), "rhs");
  Operator out = (-kI * spec.ham_strength()) * commutator(spec.hamiltonian(), rho.op());
  for (const auto& d : spec.dissipators()) out += Complex{d.rate} * dissipator(d.jump, rho);
  return out;
}

Matrix liouvillian_matrix(const MasterEquationSpec& spec) {
  const Eigen::Index d = spec.dim();
  if (d * d > kMaxLiouvillianDim) {
    throw GuardError("liouvillian_matrix: d^2 = " + std::to_string(d * d) + " exceeds the limit of " +
                     std::to_string(kMaxLiouvillianDim));
  }
  const Matrix id = Matrix::Identity(d, d);
  const Matrix& h = spec.hamiltonian().matrix();
  Matrix L = (-kI * spec.ham_strength()) *
             (Eigen::kroneckerProduct(id, h).eval() - Eigen::kroneckerProduct(Matrix(h.transpose()), id).eval());
  for (const auto& term : spec.dissipators()) {
    const Matrix& a = term.jump.matrix();
    const Matrix ada = a.adjoint() * a;
    L += term.rate * (Eigen::kroneckerProduct(Matrix(a.conjugate()), a).eval() -
                      0.5 * Eigen::kroneckerProduct(id, ada).eval() -
                      0.5 * Eigen::kroneckerProduct(Matrix(ada.transpose()), id).eval());
  }
  return L;
}

Matrix propagator_matrix(const MasterEquationSpec& spec, double t) {
  return (liouvillian_matrix(spec) * Complex{t}).exp();
}

Matrix propagate_exact(const MasterEquationSpec& spec, const DensityMatrix& rho0, double t) {
  require_same_dim(spec.hamiltonian(), rho0.op(), "propagate_exact");
  const Eigen::Index d = spec.dim();
  const Matrix dense = liouvillian_matrix(spec) * Complex{t};
  const double norm1 = dense.cwiseAbs().colwise().sum().maxCoeff();
  const Eigen::SparseMatrix<Complex> a = dense.sparseView();
  const int substeps = std::max(1, static_cast<int>(std::ceil(norm1)));

  // ||a / substeps||_1 <= 1, so term k is bounded by 1/k!.
  Vector v = Eigen::Map<const Vector>(rho0.matrix().data(), d * d);
  for (int s = 0; s < substeps; ++s) {
    Vector term = v;
    Vector sum = v;
    for (int k = 1; k <= kMaxTaylorTerms; ++k) {
      term = (a * term) / static_cast<double>(k * substeps);
      sum += term;
      if (term.lpNorm<1>() <= kTaylorTol * sum.lpNorm<1>()) break;
    }
    v = sum;
  }
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

// --- CompiledGenerator ------------------------------------------------------

CompiledGenerator::CompiledGenerator(const MasterEquationSpec& spec) {
  Matrix heff = spec.ham_strength() * spec.hamiltonian().matrix();
  for (const auto& term : spec.dissipators()) {
    if (term.rate == 0.0) continue;
    const Matrix& a = term.jump.matrix();
    heff -= (0.5 * term.rate) * kI * (a.adjoint() * a);
    jumps_.push_back({term.rate, nonzeros<Entry>(a)});
  }
  minus_i_heff_ = nonzeros<Entry>(-kI * heff);
  i_heff_adj_ = nonzeros<Entry>(kI * heff.adjoint());
}

void CompiledGenerator::apply(const Matrix& rho, Matrix& out) const {
  const Eigen::Index d = rho.rows();
  out.setZero(d, d);
  // (-i H_eff) rho: row c of rho scaled into row r.
  for (const auto& e : minus_i_heff_) out.row(e.row) += e.value * rho.row(e.col);
  // rho (i H_eff^dag): column r of rho scaled into column c.
  for (const auto& e : i_heff_adj_) out.col(e.col) += e.value * rho.col(e.row);
  // A rho A^dag, entry by entry: (i,k) of A against (j,l) of A.
  for (const auto& jump : jumps_) {
    for (const auto& left : jump.entries) {
      const Complex lv = jump.rate * left.value;
      for (const auto& right : jump.entries) {
        out(left.row, right.row) += lv * std::conj(right.value) * rho(left.col, right.col);
      }
    }
  }
}

Matrix CompiledGenerator::apply(const Matrix& rho) const {
  Matrix out(rho.rows(), rho.cols());
  apply(rho, out);
  return out;
}

// --- integration ------------------------------------------------------------

double default_step(const MasterEquationSpec& spec) {
  return std::min(0.1 / std::max(spec.stiffest_rate(), 1.0), 1e-3);
}

TrajectoryRecord integrate(const MasterEquationSpec& spec, const DensityMatrix& rho0, double t_final,
                           const Observable& recorder, const IntegrateOptions& options) {
  require_same_dim(spec.hamiltonian(), rho0.op(), "integrate");
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ValidationError("integrate: t_final must be positive");
  if (options.output_intervals < 1) throw ValidationError("integrate: output_intervals must be >= 1");
  const double hint = options.step_hint.value_or(default_step(spec));
  if (!(hint > 0.0)) throw ValidationError("integrate: step hint must be positive");

  const int n_out = options.output_intervals;
  const double interval = t_final / n_out;
  const auto substeps = static_cast<long>(std::max(1.0, std::ceil(interval / hint - 1e-9)));
  const double dt = interval / static_cast<double>(substeps);

  const CompiledGenerator gen(spec);
  TrajectoryRecord rec;
  rec.step = dt;
  rec.times.reserve(n_out + 1);

  auto sample = [&](double t, const Matrix& rho) {
    const ConservationStats s = measure(rho);
    if (s.max_trace_error > kDivergenceTol || s.min_eigenvalue < -kDivergenceTol) {
      std::ostringstream os;
      os << "integration diverged at t = " << t << " (trace error " << s.max_trace_error << ", min eigenvalue "
         << s.min_eigenvalue << ", step " << dt << "); retry with a smaller step";
      throw IntegrationError(os.str());
    }
    merge(rec.stats, s);
    rec.times.push_back(t);
    const bool want_state = recorder || options.keep_states;
    if (!want_state) return;
    try {
      DensityMatrix state{Operator(spec.n_qubits(), rho)};
      if (recorder) rec.values.push_back(recorder(state));
      if (options.keep_states) rec.states.push_back(std::move(state));
    } catch (const ValidationError& e) {
      std::ostringstream os;
      os << "integration left the density-matrix tolerances at t = " << t << " (" << e.what() << ", step " << dt
         << "); retry with a smaller step";
      throw IntegrationError(os.str());
    }
  };

  Matrix rho = rho0.matrix();
  const Eigen::Index d = rho.rows();
  Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);
  sample(0.0, rho);
  for (int i = 1; i <= n_out; ++i) {
    for (long s = 0; s < substeps; ++s) {
      gen.apply(rho, k1);
      stage = rho + (0.5 * dt) * k1;
      gen.apply(stage, k2);
      stage = rho + (0.5 * dt) * k2;
      gen.apply(stage, k3);
      stage = rho + dt * k3;
      gen.apply(stage, k4);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    sample(i == n_out ? t_final : i * interval, rho);
  }
  try {
    rec.final_state = DensityMatrix(Operator(spec.n_qubits(), rho));
  } catch (const ValidationError& e) {
    throw IntegrationError(std::string("final state left the density-matrix tolerances (") + e.what() +
                           "); retry with a smaller step");
  }
  return rec;
}

}  // namespace cqec
