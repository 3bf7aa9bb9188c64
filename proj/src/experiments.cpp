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

#include "cqec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "cqec/errors.hpp"

namespace cqec::experiments {

namespace {

/// Runs body(i) for i in [0, n) on up to `threads` workers. The first exception
/// thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

void check_rates(const SimulationConfig& cfg) {
  if (!(cfg.horizon > 0.0)) throw ValidationError("horizon T must be positive");
  if (!(cfg.gamma >= 0.0) || !(cfg.kappa >= 0.0) || !(cfg.lambda >= 0.0)) {
    throw ValidationError("rates must be nonnegative");
  }
}

}  // namespace

void merge_stats(ConservationStats& into, const ConservationStats& s) {
  into.max_trace_error = std::max(into.max_trace_error, s.max_trace_error);
  into.max_hermiticity_error = std::max(into.max_hermiticity_error, s.max_hermiticity_error);
  into.min_eigenvalue = std::min(into.min_eigenvalue, s.min_eigenvalue);
}

CurveRun run_fidelity_curve(const SimulationConfig& cfg) {
  check_rates(cfg);
  const MasterEquationSpec spec =
      bitflip::build_model({cfg.gamma, cfg.kappa, cfg.lambda, cfg.errors_on_ancillas});
  const auto psi = cfg.psi0;
  IntegrateOptions opts;
  opts.step_hint = cfg.step_hint;
  opts.output_intervals = cfg.output_intervals;
  TrajectoryRecord rec = integrate(
      spec, bitflip::initial_state(psi), cfg.horizon,
      [psi](const DensityMatrix& rho) { return bitflip::fidelity(rho, psi); }, opts);
  return {{std::move(rec.times), std::move(rec.values)}, rec.stats};
}

FidelityTrace uncorrected_baseline(double gamma, const std::vector<double>& times) {
  if (!(gamma >= 0.0)) throw ValidationError("gamma must be nonnegative");
  FidelityTrace out{times, {}};
  out.fidelity.reserve(times.size());
  for (double t : times) out.fidelity.push_back(0.5 * (1.0 + std::exp(-2.0 * gamma * t)));
  return out;
}

double max_transient_dip(const FidelityTrace& corrected, const FidelityTrace& baseline, std::optional<double> t_max) {
  if (corrected.times.size() != baseline.times.size()) throw DimensionError("traces must share one time grid");
  double dip = 0.0;
  for (std::size_t i = 0; i < corrected.times.size(); ++i) {
    if (t_max && corrected.times[i] > *t_max) break;
    dip = std::max(dip, baseline.fidelity[i] - corrected.fidelity[i]);
  }
  return dip;
}

CurveSet run_curve_set(const SimulationConfig& base, const std::vector<double>& kappas, double scaling, int threads) {
  if (kappas.empty()) throw ValidationError("kappa list must be nonempty");
  CurveSet out;
  for (double k : kappas) {
    SimulationConfig c = base;
    c.kappa = k;
    c.lambda = scaling * k;
    out.configs.push_back(c);
  }
  std::vector<CurveRun> runs(kappas.size());
  parallel_for(kappas.size(), threads, [&](std::size_t i) { runs[i] = run_fidelity_curve(out.configs[i]); });
  for (auto& r : runs) {
    merge_stats(out.stats, r.stats);
    out.traces.push_back(std::move(r.trace));
  }
  out.baseline = uncorrected_baseline(base.gamma, out.traces.front().times);
  return out;
}

std::vector<ScalingSweepResult> sweep_scaling(const std::vector<double>& kappas, const std::vector<double>& s_grid,
                                              const SimulationConfig& base, int threads) {
  if (kappas.empty() || s_grid.empty()) throw ValidationError("sweep grids must be nonempty");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] >= 0.0)) throw ValidationError("scaling values must be nonnegative");
    if (i > 0 && !(s_grid[i] > s_grid[i - 1])) throw ValidationError("scaling grid must be strictly increasing");
  }
  const std::size_t ns = s_grid.size();
  std::vector<CurveRun> runs(kappas.size() * ns);
  parallel_for(runs.size(), threads, [&](std::size_t idx) {
    SimulationConfig c = base;
    c.kappa = kappas[idx / ns];
    c.lambda = s_grid[idx % ns] * c.kappa;
    runs[idx] = run_fidelity_curve(c);
  });
  std::vector<ScalingSweepResult> out;
  for (std::size_t k = 0; k < kappas.size(); ++k) {
    ScalingSweepResult r{kappas[k], base.gamma, base.horizon, {}, {}};
    for (std::size_t j = 0; j < ns; ++j) {
      const CurveRun& run = runs[k * ns + j];
      r.rows.push_back({s_grid[j], run.trace.final_value()});
      merge_stats(r.stats, run.stats);
    }
    out.push_back(std::move(r));
  }
  return out;
}

SurfaceResult sweep_surface(const std::vector<double>& gamma_grid, const std::vector<double>& kappa_grid,
                            const SimulationConfig& base, double scaling, int threads) {
  if (gamma_grid.empty() || kappa_grid.empty()) throw ValidationError("surface grids must be nonempty");
  const std::size_t nk = kappa_grid.size();
  std::vector<CurveRun> runs(gamma_grid.size() * nk);
  parallel_for(runs.size(), threads, [&](std::size_t idx) {
    SimulationConfig c = base;
    c.gamma = gamma_grid[idx / nk];
    c.kappa = kappa_grid[idx % nk];
    c.lambda = scaling * c.kappa;
    runs[idx] = run_fidelity_curve(c);
  });
  SurfaceResult out{gamma_grid, kappa_grid, {}, base.horizon, {}};
  for (std::size_t i = 0; i < gamma_grid.size(); ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < nk; ++j) {
      row.push_back(runs[i * nk + j].trace.final_value());
      merge_stats(out.stats, runs[i * nk + j].stats);
    }
    out.fidelity.push_back(std::move(row));
  }
  return out;
}

OptimalScaling find_optimal_scaling(const ScalingSweepResult& sweep) {
  if (sweep.rows.empty()) throw ValidationError("find_optimal_scaling: empty sweep");
  std::size_t best = 0;
  for (std::size_t i = 1; i < sweep.rows.size(); ++i) {
    if (sweep.rows[i].avg_fidelity > sweep.rows[best].avg_fidelity) best = i;
  }
  OptimalScaling out{sweep.rows[best].s, sweep.rows[best].avg_fidelity};
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    if (i != best && sweep.rows[i].avg_fidelity == out.fidelity) out.tie = true;
  }
  out.boundary_maximum = sweep.rows.size() > 1 && (best == 0 || best + 1 == sweep.rows.size());
  return out;
}

std::vector<double> linear_grid(double start, double step, double stop) {
  if (!(step > 0.0) || stop < start) throw ValidationError("grid needs step > 0 and stop >= start");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-6));
  for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
  return out;
}

}  // namespace cqec::experiments
