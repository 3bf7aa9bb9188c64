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

#include <iosfwd>
#include <string>
#include <vector>

#include "cqec/config.hpp"
#include "cqec/csv.hpp"

namespace cqec::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kConfigError = 2,
  kIntegrationDiverged = 3,
  kGuardTripped = 4,
  kIoFailure = 5,
};

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Structural and stationarity checks on the shipped model.
std::vector<CheckResult> run_verification();

CsvTable simulate_table(const RunConfig& cfg);
CsvTable sweep_scaling_table(const RunConfig& cfg);
CsvTable sweep_surface_table(const RunConfig& cfg);
CsvTable zeno_table(const RunConfig& cfg);

/// Output file name for a command's CSV ("simulate.csv", ...).
std::string output_file(Command c);

/// Runs the command, writes its CSV under cfg.text("out") and reports on
/// `log`. Errors are caught and mapped to ExitCode values.
int dispatch(const RunConfig& cfg, std::ostream& log);

}  // namespace cqec::cli
