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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace cqec::cli {

enum class Command { Simulate, SweepScaling, SweepSurface, Zeno, Verify };

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);
/// "simulate, sweep-scaling, sweep-surface, zeno, verify"
std::string command_list();

using Value = std::variant<double, long, bool, std::vector<double>, std::string>;

/// Validated configuration: every known key is present (explicit or default)
/// except optional ones such as step_hint.
class RunConfig {
 public:
  RunConfig(Command command, std::map<std::string, Value> values);

  Command command() const { return command_; }

  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  const std::vector<double>& list(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const std::map<std::string, Value>& values() const { return values_; }

 private:
  const Value& at(const std::string& key) const;

  Command command_;
  std::map<std::string, Value> values_;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines (with `# comments` and `[command]` sections that
/// only apply to that command), applies overrides on top, fills defaults and
/// validates. Throws ConfigError.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

/// "--key=value" -> {key, value}; throws ConfigError on other shapes.
std::pair<std::string, std::string> parse_override(std::string_view arg);

/// "1,2,3" or "start:step:stop".
std::vector<double> parse_real_list(std::string_view text);

}  // namespace cqec::cli
