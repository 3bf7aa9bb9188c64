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

#include <optional>
#include <vector>

#include "cqec/bitflip.hpp"
#include "cqec/lindblad.hpp"

namespace cqec::experiments {

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> fidelity;

  double final_value() const { return fidelity.back(); }
};

struct SimulationConfig {
  double gamma = 0.05;
  double kappa = 100.0;
  double lambda = 250.0;
  double horizon = 10.0;
  bitflip::LogicalState psi0{1.0, 0.0};
  bool errors_on_ancillas = false;
  std::optional<double> step_hint;
  int output_intervals = 1000;
};

struct CurveRun {
  FidelityTrace trace;
  ConservationStats stats;
};

/// Integrates the bit-flip model from encode(psi0) (x) |00> and records F(t).
CurveRun run_fidelity_curve(const SimulationConfig& cfg);

/// (1 + exp(-2 gamma t)) / 2: one qubit under bit flips, no correction.
FidelityTrace uncorrected_baseline(double gamma, const std::vector<double>& times);

/// max_t (baseline(t) - corrected(t)), clamped at 0. Both traces share one grid.
double max_transient_dip(const FidelityTrace& corrected, const FidelityTrace& baseline,
                         std::optional<double> t_max = std::nullopt);

struct CurveSet {
  std::vector<SimulationConfig> configs;
  std::vector<FidelityTrace> traces;
  FidelityTrace baseline;
  ConservationStats stats;
};

/// One corrected curve per kappa (lambda = s * kappa) plus the analytic baseline.
CurveSet run_curve_set(const SimulationConfig& base, const std::vector<double>& kappas, double scaling = 2.5,
                       int threads = 0);

struct ScalingRow {
  double s;
  double avg_fidelity;
};

struct ScalingSweepResult {
  double kappa;
  double gamma;
  double horizon;
  std::vector<ScalingRow> rows;
  ConservationStats stats;
};

/// F(T) over s for each kappa with lambda = s * kappa. `threads` = 0 picks the
/// hardware concurrency; output order follows the grids regardless.
std::vector<ScalingSweepResult> sweep_scaling(const std::vector<double>& kappas, const std::vector<double>& s_grid,
                                              const SimulationConfig& base, int threads = 0);

struct SurfaceResult {
  std::vector<double> gamma_grid;
  std::vector<double> kappa_grid;
  /// fidelity[i][j] = F(T) at gamma_grid[i], kappa_grid[j].
  std::vector<std::vector<double>> fidelity;
  double horizon;
  ConservationStats stats;
};

/// F(T) over (gamma, kappa) with lambda = scaling * kappa.
SurfaceResult sweep_surface(const std::vector<double>& gamma_grid, const std::vector<double>& kappa_grid,
                            const SimulationConfig& base, double scaling = 2.5, int threads = 0);

struct OptimalScaling {
  double s;
  double fidelity;
  bool tie = false;               // another grid point reached the same value
  bool boundary_maximum = false;  // argmax sits on the first or last grid point
};

/// Grid argmax; ties go to the smaller s.
OptimalScaling find_optimal_scaling(const ScalingSweepResult& sweep);

/// start, start+step, ... up to stop (inclusive, within step/1e6).
std::vector<double> linear_grid(double start, double step, double stop);

void merge_stats(ConservationStats& into, const ConservationStats& s);

}  // namespace cqec::experiments
