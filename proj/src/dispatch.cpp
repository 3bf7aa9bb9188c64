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

#include "cqec/dispatch.hpp"

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cqec/bitflip.hpp"
#include "cqec/errors.hpp"
#include "cqec/experiments.hpp"
#include "cqec/zeno.hpp"

namespace cqec::cli {

namespace {

using bitflip::LogicalState;

experiments::SimulationConfig simulation_config(const RunConfig& cfg) {
  experiments::SimulationConfig s;
  s.gamma = cfg.real("gamma");
  s.kappa = cfg.real("kappa");
  s.lambda = cfg.real("lambda");
  s.horizon = cfg.real("T");
  s.psi0 = LogicalState(cfg.real("alpha"), cfg.real("beta"));
  s.errors_on_ancillas = cfg.flag("errors_on_ancillas");
  if (cfg.has("step_hint")) s.step_hint = cfg.real("step_hint");
  s.output_intervals = static_cast<int>(cfg.integer("output_intervals"));
  return s;
}

std::string scientific(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

CheckResult check(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

}  // namespace

std::vector<CheckResult> run_verification() {
  std::vector<CheckResult> out;
  const auto code = bitflip::code_model();

  const Operator u = zeno::build_cycle_unitary();
  const double unitarity = max_abs((u.adjoint() * u - Operator::identity(5)).matrix());
  out.push_back(check("cycle unitary is unitary", unitarity < 1e-12, "max dev " + scientific(unitarity)));

  const auto pup = zeno::verify_pup_property(u);
  out.push_back(check("P_A U_AS P_A = P_A Pi_S", pup.holds, "max dev " + scientific(pup.max_deviation)));

  std::vector<Operator> errors;
  for (const auto& e : code.error_ops) errors.push_back(pauli_string(e));
  const auto kl = zeno::verify_kl_condition(errors);
  for (std::size_t i = 0; i < kl.size(); ++i) {
    out.push_back(check("Pi_S " + code.error_ops[i] + " Pi_S = 0", kl[i].holds,
                        "max dev " + scientific(kl[i].max_deviation)));
  }

  {
    const double comm = max_abs(commutator(code.syndrome_zzi, code.syndrome_izz).matrix());
    bool stabilized = comm == 0.0;
    for (const char* w : {"000", "111"}) {
      const auto s = bitflip::syndrome_signs(StateVector::basis(w));
      stabilized = stabilized && s.zzi == +1 && s.izz == +1;
    }
    out.push_back(check("syndromes commute and stabilize codewords", stabilized, "||[ZZI,IZZ]|| " + scientific(comm)));
  }

  {
    bool restored = true;
    for (const auto& e : code.error_ops) {
      for (const char* w : {"000", "111"}) {
        const StateVector hit = pauli_string(e) * StateVector::basis(w);
        const auto fix = bitflip::correction_for(bitflip::syndrome_signs(hit));
        if (!fix || *fix != e) restored = false;
        if (fix) restored = restored && ((pauli_string(*fix) * hit).amplitudes() - StateVector::basis(w).amplitudes()).norm() == 0.0;
      }
    }
    out.push_back(check("syndrome table corrects every single flip", restored, ""));
  }

  {
    const LogicalState psi(std::sqrt(0.3), std::sqrt(0.7));
    const Vector v = kron(bitflip::encode(psi), StateVector::basis("00")).amplitudes();
    double worst = 0.0;
    for (const auto& h : {bitflip::build_detection_hamiltonian(), bitflip::build_correction_hamiltonian(),
                          bitflip::build_coupling_hamiltonian()}) {
      worst = std::max(worst, (h.matrix() * v).norm());
    }
    out.push_back(check("H_D, H_C, H vanish on codespace (x) |00>", worst < 1e-14, "max ||H psi|| " + scientific(worst)));

    const auto spec = bitflip::build_model({0.0, 100.0, 250.0, false});
    const DensityMatrix rho0 = bitflip::initial_state(psi);
    const double r = max_abs(rhs(spec, rho0).matrix());
    IntegrateOptions opts;
    opts.output_intervals = 100;
    const auto rec = integrate(spec, rho0, 1.0, [&](const DensityMatrix& rho) { return bitflip::fidelity(rho, psi); },
                               opts);
    double drift = 0.0;
    for (double f : rec.values) drift = std::max(drift, std::abs(f - 1.0));
    out.push_back(check("codespace is stationary at gamma = 0", r < 1e-12 && drift < 1e-9,
                        "||rhs|| " + scientific(r) + ", max |F-1| " + scientific(drift)));
  }

  for (const auto& [name, h, signs] :
       {std::tuple{"H_D", bitflip::build_detection_hamiltonian(), bitflip::factored_detection_signs()},
        std::tuple{"H_C", bitflip::build_correction_hamiltonian(), bitflip::factored_correction_signs()}}) {
    const auto cmp = bitflip::compare_with_signs(bitflip::pauli_decomposition(h), signs);
    out.push_back(check(std::string(name) + " Pauli strings and signs match factored form", cmp.ok(),
                        std::to_string(cmp.n_terms) + " terms, uniform |c| = " + scientific(cmp.magnitude)));
  }

  {
    zeno::ZenoConfig zc;
    const auto ops = zeno::build_cycle_operators(zc);
    const double heff = zeno::effective_hamiltonian_norm(ops, zc.n_env);
    out.push_back(check("(P_A Pi_S) H_SE (P_A Pi_S) = 0", heff == 0.0, "max " + scientific(heff)));
  }

  {
    const Matrix L = liouvillian_matrix(bitflip::build_model({0.05, 100.0, 250.0, false}));
    const Eigen::Index d = 32;
    Vector vec_id = Vector::Zero(d * d);
    for (Eigen::Index i = 0; i < d; ++i) vec_id(i * d + i) = 1.0;
    const double leak = (vec_id.transpose() * L).cwiseAbs().maxCoeff();
    out.push_back(check("Liouvillian preserves trace", leak < 1e-10, "max |vec(I)^T L| " + scientific(leak)));
  }
  return out;
}

CsvTable simulate_table(const RunConfig& cfg) {
  const auto sim = simulation_config(cfg);
  const auto run = experiments::run_fidelity_curve(sim);
  const auto base = experiments::uncorrected_baseline(sim.gamma, run.trace.times);
  CsvTable t{schema::kFidelityCurve, {}};
  for (std::size_t i = 0; i < run.trace.times.size(); ++i) {
    t.rows.push_back({run.trace.times[i], run.trace.fidelity[i], base.fidelity[i]});
  }
  return t;
}

CsvTable sweep_scaling_table(const RunConfig& cfg) {
  const auto sim = simulation_config(cfg);
  const auto sweeps = experiments::sweep_scaling(cfg.list("kappa_list"), cfg.list("s_grid"), sim,
                                                 static_cast<int>(cfg.integer("threads")));
  CsvTable t{schema::kScalingSweep, {}};
  for (const auto& sw : sweeps) {
    for (const auto& row : sw.rows) t.rows.push_back({sw.kappa, row.s, row.s * sw.kappa, row.avg_fidelity});
  }
  return t;
}

CsvTable sweep_surface_table(const RunConfig& cfg) {
  const auto sim = simulation_config(cfg);
  const auto surf = experiments::sweep_surface(cfg.list("gamma_grid"), cfg.list("kappa_grid"), sim,
                                               cfg.real("scaling"), static_cast<int>(cfg.integer("threads")));
  CsvTable t{schema::kSurface, {}};
  for (std::size_t i = 0; i < surf.gamma_grid.size(); ++i) {
    for (std::size_t j = 0; j < surf.kappa_grid.size(); ++j) {
      t.rows.push_back({surf.gamma_grid[i], surf.kappa_grid[j], surf.fidelity[i][j]});
    }
  }
  return t;
}

CsvTable zeno_table(const RunConfig& cfg) {
  CsvTable t{schema::kZeno, {}};
  for (double n : cfg.list("cycles")) {
    zeno::ZenoConfig zc;
    zc.n_env = static_cast<int>(cfg.integer("n_env"));
    zc.epsilon = cfg.real("epsilon");
    zc.total_time = cfg.real("T");
    zc.cycles = static_cast<int>(n);
    zc.psi0 = LogicalState(cfg.real("alpha"), cfg.real("beta"));
    zc.env_basis_index = static_cast<int>(cfg.integer("env_state"));
    const auto rep = zeno::run_zeno_cycles(zc);
    t.rows.push_back({n, zc.tau(), rep.survival_probability, rep.deviation});
  }
  return t;
}

std::string output_file(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate.csv";
    case Command::SweepScaling: return "sweep_scaling.csv";
    case Command::SweepSurface: return "sweep_surface.csv";
    case Command::Zeno: return "zeno.csv";
    case Command::Verify: return "";
  }
  return "";
}

int dispatch(const RunConfig& cfg, std::ostream& log) {
  try {
    if (cfg.command() == Command::Verify) {
      const auto results = run_verification();
      bool all = true;
      for (const auto& r : results) {
        log << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(52) << r.name << r.detail << '\n';
        all = all && r.passed;
      }
      log << (all ? "all checks passed" : "some checks FAILED") << '\n';
      return all ? kOk : kCheckFailed;
    }

    CsvTable table;
    switch (cfg.command()) {
      case Command::Simulate: table = simulate_table(cfg); break;
      case Command::SweepScaling: table = sweep_scaling_table(cfg); break;
      case Command::SweepSurface: table = sweep_surface_table(cfg); break;
      case Command::Zeno: table = zeno_table(cfg); break;
      case Command::Verify: break;
    }
    const std::filesystem::path dir = cfg.text("out");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    const auto path = dir / output_file(cfg.command());
    write_csv(table, path);
    log << "wrote " << table.rows.size() << " rows to " << path.string() << '\n';
    return kOk;
  } catch (const IntegrationError& e) {
    log << "error: " << e.what() << '\n';
    return kIntegrationDiverged;
  } catch (const GuardError& e) {
    log << "error: " << e.what() << '\n';
    return kGuardTripped;
  } catch (const IoError& e) {
    log << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace cqec::cli
