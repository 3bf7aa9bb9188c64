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

// Command-line front end: cqec <command> [--config FILE] [--out DIR] [--key=value ...]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cqec/config.hpp"
#include "cqec/dispatch.hpp"
#include "cqec/errors.hpp"

int main(int argc, char** argv) {
  using namespace cqec::cli;

  CLI::App app{"Continuous bit-flip error correction by ancilla cooling"};
  app.allow_extras();
  std::string command;
  std::string config_path;
  std::string out_dir;
  app.add_option("command", command, "One of: " + command_list());
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--out", out_dir, "Output directory for CSV files");
  app.footer(
      "Any configuration key can be overridden as --key=value, e.g. --gamma=0.1 --s_grid=1:0.5:4.\n"
      "Exit codes: 0 ok, 1 check failed, 2 configuration error, 3 integration diverged,\n"
      "4 guard tripped, 5 I/O failure.");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    std::string text;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) {
        std::cerr << "error: cannot read config file '" << config_path << "'\n";
        return kIoFailure;
      }
      std::ostringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    Overrides overrides;
    for (const auto& extra : app.remaining()) overrides.push_back(parse_override(extra));
    if (!command.empty()) overrides.insert(overrides.begin(), {"command", command});
    if (!out_dir.empty()) overrides.emplace_back("out", out_dir);

    const RunConfig cfg = parse_config(text, overrides);
    return dispatch(cfg, std::cout);
  } catch (const cqec::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}
