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

#include <cmath>

#include "cqec/errors.hpp"
#include "cqec/experiments.hpp"

using namespace cqec;
using namespace cqec::experiments;

namespace {

ScalingSweepResult sweep_of(std::vector<std::pair<double, double>> rows) {
  ScalingSweepResult r{100.0, 0.05, 10.0, {}, {}};
  for (auto [s, f] : rows) r.rows.push_back({s, f});
  return r;
}

SimulationConfig short_run() {
  SimulationConfig cfg;
  cfg.horizon = 0.5;
  cfg.output_intervals = 10;
  return cfg;
}

}  // namespace

TEST_CASE("uncorrected baseline") {
  const auto b = uncorrected_baseline(0.05, {0.0, 10.0, 1e6});
  CHECK(b.fidelity[0] == 1.0);
  CHECK(b.fidelity[1] == doctest::Approx(0.5 * (1.0 + std::exp(-1.0))).epsilon(1e-12));
  CHECK(b.fidelity[2] == doctest::Approx(0.5));
  CHECK(uncorrected_baseline(0.0, {3.0}).fidelity[0] == 1.0);
  CHECK_THROWS_AS(uncorrected_baseline(-1.0, {1.0}), ValidationError);
}

TEST_CASE("baseline equals a one-qubit Lindblad integration") {
  const double gamma = 0.3;
  const MasterEquationSpec spec(Operator::zero(1), 0.0, {{gamma, pauli_string("X")}});
  const StateVector zero = StateVector::basis("0");
  const auto rec = integrate(spec, DensityMatrix::pure(zero), 5.0,
                             [&](const DensityMatrix& rho) { return rho.expectation(zero); }, {.output_intervals = 50});
  const auto b = uncorrected_baseline(gamma, rec.times);
  for (std::size_t i = 0; i < rec.times.size(); ++i) CHECK(std::abs(rec.values[i] - b.fidelity[i]) < 1e-6);
}

TEST_CASE("run_fidelity_curve") {
  SUBCASE("no errors keeps F identically 1") {
    SimulationConfig cfg = short_run();
    cfg.gamma = 0.0;
    cfg.psi0 = bitflip::LogicalState(std::sqrt(0.3), Complex{0.0, std::sqrt(0.7)});
    const auto run = run_fidelity_curve(cfg);
    REQUIRE(run.trace.fidelity.size() == 11);
    for (double f : run.trace.fidelity) CHECK(std::abs(f - 1.0) < 1e-12);
  }
  SUBCASE("fidelity stays within [0, 1] and starts at 1") {
    SimulationConfig cfg = short_run();
    cfg.gamma = 0.8;
    const auto run = run_fidelity_curve(cfg);
    CHECK(run.trace.fidelity.front() == doctest::Approx(1.0));
    for (double f : run.trace.fidelity) {
      CHECK(f >= 0.0);
      CHECK(f <= 1.0);
    }
    CHECK(run.stats.max_trace_error < 1e-9);
  }
  SUBCASE("invalid input") {
    SimulationConfig cfg = short_run();
    cfg.horizon = 0.0;
    CHECK_THROWS_AS(run_fidelity_curve(cfg), ValidationError);
    cfg = short_run();
    cfg.lambda = -1.0;
    CHECK_THROWS_AS(run_fidelity_curve(cfg), ValidationError);
  }
}

TEST_CASE("max_transient_dip") {
  const FidelityTrace base{{0, 1, 2, 3}, {1.0, 0.9, 0.8, 0.7}};
  const FidelityTrace corr{{0, 1, 2, 3}, {1.0, 0.85, 0.82, 0.9}};
  CHECK(max_transient_dip(corr, base) == doctest::Approx(0.05));
  CHECK(max_transient_dip(base, base) == 0.0);
  CHECK(max_transient_dip(corr, base, 0.5) == 0.0);
  CHECK_THROWS_AS(max_transient_dip(FidelityTrace{{0}, {1}}, base), DimensionError);
}

TEST_CASE("find_optimal_scaling") {
  SUBCASE("single row") {
    const auto o = find_optimal_scaling(sweep_of({{2.0, 0.9}}));
    CHECK(o.s == 2.0);
    CHECK_FALSE(o.tie);
    CHECK_FALSE(o.boundary_maximum);
  }
  SUBCASE("interior maximum") {
    const auto o = find_optimal_scaling(sweep_of({{1.0, 0.8}, {2.0, 0.95}, {3.0, 0.9}}));
    CHECK(o.s == 2.0);
    CHECK(o.fidelity == 0.95);
    CHECK_FALSE(o.boundary_maximum);
  }
  SUBCASE("ties go to the smaller s") {
    const auto o = find_optimal_scaling(sweep_of({{1.0, 0.8}, {2.0, 0.95}, {3.0, 0.95}, {4.0, 0.7}}));
    CHECK(o.s == 2.0);
    CHECK(o.tie);
  }
  SUBCASE("boundary maximum is flagged") {
    CHECK(find_optimal_scaling(sweep_of({{1.0, 0.99}, {2.0, 0.95}})).boundary_maximum);
    CHECK(find_optimal_scaling(sweep_of({{1.0, 0.9}, {2.0, 0.95}})).boundary_maximum);
  }
  SUBCASE("empty") { CHECK_THROWS_AS(find_optimal_scaling(sweep_of({})), ValidationError); }
}

TEST_CASE("linear_grid") {
  const auto g = linear_grid(0.5, 0.25, 5.0);
  REQUIRE(g.size() == 19);
  CHECK(g.front() == 0.5);
  CHECK(g.back() == doctest::Approx(5.0));
  CHECK(g[4] == doctest::Approx(1.5));
  CHECK(linear_grid(1.0, 1.0, 1.0) == std::vector<double>{1.0});
  CHECK_THROWS_AS(linear_grid(0.0, 0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(linear_grid(2.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("sweeps produce one entry per grid point in grid order") {
  const SimulationConfig base = short_run();

  const auto sweeps = sweep_scaling({50.0, 100.0}, {1.0, 2.0, 3.0}, base, 2);
  REQUIRE(sweeps.size() == 2);
  CHECK(sweeps[0].kappa == 50.0);
  CHECK(sweeps[1].kappa == 100.0);
  for (const auto& sw : sweeps) {
    REQUIRE(sw.rows.size() == 3);
    CHECK(sw.rows[0].s == 1.0);
    CHECK(sw.rows[2].s == 3.0);
    for (const auto& row : sw.rows) CHECK(row.avg_fidelity <= 1.0);
  }
  CHECK_THROWS_AS(sweep_scaling({50.0}, {2.0, 1.0}, base), ValidationError);
  CHECK_THROWS_AS(sweep_scaling({}, {1.0}, base), ValidationError);

  const auto surf = sweep_surface({0.1, 0.2}, {50.0, 100.0, 200.0}, base, 2.5, 1);
  REQUIRE(surf.fidelity.size() == 2);
  for (const auto& row : surf.fidelity) CHECK(row.size() == 3);
  // More errors lower the fidelity at fixed kappa.
  CHECK(surf.fidelity[1][0] < surf.fidelity[0][0]);

  // The threaded sweep matches a direct run.
  SimulationConfig direct = base;
  direct.gamma = 0.2;
  direct.kappa = 100.0;
  direct.lambda = 250.0;
  CHECK(surf.fidelity[1][1] == run_fidelity_curve(direct).trace.final_value());
}

TEST_CASE("run_curve_set") {
  const auto set = run_curve_set(short_run(), {50.0, 100.0}, 2.5, 1);
  REQUIRE(set.traces.size() == 2);
  CHECK(set.configs[1].lambda == 250.0);
  CHECK(set.baseline.times == set.traces[0].times);
  CHECK_THROWS_AS(run_curve_set(short_run(), {}), ValidationError);
}

TEST_CASE("merge_stats keeps the worst values") {
  ConservationStats a{1e-12, 2e-12, 0.1};
  merge_stats(a, {5e-13, 3e-12, -1e-9});
  CHECK(a.max_trace_error == 1e-12);
  CHECK(a.max_hermiticity_error == 3e-12);
  CHECK(a.min_eigenvalue == -1e-9);
}
