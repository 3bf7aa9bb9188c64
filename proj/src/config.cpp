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

#include "cqec/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cqec/errors.hpp"
#include "cqec/experiments.hpp"

namespace cqec::cli {

namespace {

enum class Kind { Real, Integer, Flag, List, Text };

struct KeySpec {
  std::string_view name;
  Kind kind;
  /// Default rendered as text; empty means "no default" (optional or computed).
  std::string_view fallback;
};

constexpr std::array<KeySpec, 21> kKeys{{
    {"command", Kind::Text, ""},
    {"gamma", Kind::Real, "0.05"},
    {"kappa", Kind::Real, "100"},
    {"lambda", Kind::Real, ""},  // 2.5 * kappa
    {"T", Kind::Real, ""},       // 10, or 1 for zeno
    {"alpha", Kind::Real, "1"},
    {"beta", Kind::Real, "0"},
    {"step_hint", Kind::Real, ""},
    {"errors_on_ancillas", Kind::Flag, "false"},
    {"output_intervals", Kind::Integer, "1000"},
    {"kappa_list", Kind::List, "25,50,100,200"},
    {"s_grid", Kind::List, "0.5:0.25:5.0"},
    {"gamma_grid", Kind::List, "0.05:0.05:0.8"},
    {"kappa_grid", Kind::List, "25,50,100,200,400"},
    {"scaling", Kind::Real, "2.5"},
    {"epsilon", Kind::Real, "0.1"},
    {"n_env", Kind::Integer, "3"},
    {"cycles", Kind::List, "8,16,32,64"},
    {"env_state", Kind::Integer, "0"},
    {"out", Kind::Text, "."},
    {"threads", Kind::Integer, "0"},
}};

constexpr std::array<std::pair<Command, std::string_view>, 5> kCommands{{
    {Command::Simulate, "simulate"},
    {Command::SweepScaling, "sweep-scaling"},
    {Command::SweepSurface, "sweep-surface"},
    {Command::Zeno, "zeno"},
    {Command::Verify, "verify"},
}};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

const KeySpec* find_key(std::string_view name) {
  auto it = std::find_if(kKeys.begin(), kKeys.end(), [&](const KeySpec& k) { return k.name == name; });
  return it == kKeys.end() ? nullptr : &*it;
}

double to_real(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError("key '" + std::string(key) + "': expected a real number, got '" + t + "'");
  }
  return v;
}

long to_integer(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  long v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw ConfigError("key '" + std::string(key) + "': expected an integer, got '" + t + "'");
  }
  return v;
}

bool to_flag(std::string_view key, std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("key '" + std::string(key) + "': expected a boolean (true/false), got '" + t + "'");
}

Value convert(const KeySpec& spec, std::string_view text) {
  switch (spec.kind) {
    case Kind::Real: return to_real(spec.name, text);
    case Kind::Integer: return to_integer(spec.name, text);
    case Kind::Flag: return to_flag(spec.name, text);
    case Kind::Text: return trim(text);
    case Kind::List:
      try {
        return parse_real_list(text);
      } catch (const ConfigError& e) {
        throw ConfigError("key '" + std::string(spec.name) + "': " + e.what());
      }
  }
  throw ConfigError("unreachable");
}

Command require_command(std::string_view name) {
  if (name.empty()) throw ConfigError("missing command; expected one of: " + command_list());
  auto c = parse_command(name);
  if (!c) throw ConfigError("unknown command '" + std::string(name) + "'; expected one of: " + command_list());
  return *c;
}

void validate(const RunConfig& cfg) {
  for (const char* key : {"gamma", "kappa", "lambda", "T", "scaling", "epsilon"}) {
    if (cfg.real(key) < 0.0) throw ConfigError("key '" + std::string(key) + "' must be nonnegative");
  }
  if (!(cfg.real("T") > 0.0)) throw ConfigError("key 'T' must be positive");
  if (cfg.has("step_hint") && !(cfg.real("step_hint") > 0.0)) throw ConfigError("key 'step_hint' must be positive");
  for (const char* key : {"kappa_list", "s_grid", "gamma_grid", "kappa_grid", "cycles"}) {
    const auto& l = cfg.list(key);
    if (l.empty()) throw ConfigError("key '" + std::string(key) + "' must be a nonempty list");
    for (double v : l) {
      if (v < 0.0) throw ConfigError("key '" + std::string(key) + "' must not contain negative values");
    }
  }
  for (double c : cfg.list("cycles")) {
    if (c < 1.0 || c != std::floor(c)) throw ConfigError("key 'cycles' must list positive integers");
  }
  const double a = cfg.real("alpha"), b = cfg.real("beta");
  if (std::abs(a * a + b * b - 1.0) > 1e-12) {
    throw ConfigError("keys 'alpha' and 'beta' must satisfy alpha^2 + beta^2 = 1");
  }
  if (cfg.integer("output_intervals") < 1) throw ConfigError("key 'output_intervals' must be >= 1");
  if (cfg.integer("threads") < 0) throw ConfigError("key 'threads' must be >= 0");
  if (cfg.text("out").empty()) throw ConfigError("key 'out' must be a nonempty path");
}

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& [cmd, name] : kCommands) {
    if (cmd == c) return name;
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [cmd, n] : kCommands) {
    if (n == name) return cmd;
  }
  return std::nullopt;
}

std::string command_list() {
  std::string out;
  for (const auto& [cmd, name] : kCommands) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

RunConfig::RunConfig(Command command, std::map<std::string, Value> values)
    : command_(command), values_(std::move(values)) {}

const Value& RunConfig::at(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
  return it->second;
}

double RunConfig::real(const std::string& key) const { return std::get<double>(at(key)); }
long RunConfig::integer(const std::string& key) const { return std::get<long>(at(key)); }
bool RunConfig::flag(const std::string& key) const { return std::get<bool>(at(key)); }
const std::vector<double>& RunConfig::list(const std::string& key) const {
  return std::get<std::vector<double>>(at(key));
}
const std::string& RunConfig::text(const std::string& key) const { return std::get<std::string>(at(key)); }

std::vector<double> parse_real_list(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty list");
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(t);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError("range must be start:step:stop, got '" + t + "'");
    try {
      return experiments::linear_grid(to_real("range", parts[0]), to_real("range", parts[1]),
                                      to_real("range", parts[2]));
    } catch (const ValidationError& e) {
      throw ConfigError(std::string("invalid range '") + t + "': " + e.what());
    }
  }
  std::vector<double> out;
  std::stringstream ss(t);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(to_real("list", p));
  return out;
}

std::pair<std::string, std::string> parse_override(std::string_view arg) {
  if (arg.substr(0, 2) != "--") throw ConfigError("override '" + std::string(arg) + "' must look like --key=value");
  arg.remove_prefix(2);
  const auto eq = arg.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ConfigError("override '--" + std::string(arg) + "' must look like --key=value");
  }
  return {std::string(arg.substr(0, eq)), std::string(arg.substr(eq + 1))};
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
  // Raw (section, key, value) entries in file order.
  struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line;
  };
  std::vector<Entry> entries;
  std::string section;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!parse_command(section)) {
        throw ConfigError("line " + std::to_string(lineno) + ": unknown section '" + section +
                          "'; sections are named after commands: " + command_list());
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value, got '" + line + "'");
    }
    entries.push_back({section, trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)),
                       lineno});
  }

  std::map<std::string, std::string> raw_values;
  for (const auto& e : entries) {
    if (!find_key(e.key)) throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + e.key + "'");
    if (e.section.empty()) raw_values[e.key] = e.value;
  }
  for (const auto& [k, v] : overrides) {
    if (!find_key(k)) throw ConfigError("unknown key '" + k + "'");
  }
  auto override_of = [&](const std::string& key) -> std::optional<std::string> {
    std::optional<std::string> found;
    for (const auto& [k, v] : overrides) {
      if (k == key) found = v;
    }
    return found;
  };

  std::string command_text = raw_values.count("command") ? raw_values["command"] : "";
  if (auto o = override_of("command")) command_text = *o;
  const Command command = require_command(command_text);

  // Section entries for the active command override global ones.
  for (const auto& e : entries) {
    if (e.section == command_name(command)) raw_values[e.key] = e.value;
  }
  for (const auto& [k, v] : overrides) raw_values[k] = v;

  std::map<std::string, Value> values;
  for (const auto& spec : kKeys) {
    auto it = raw_values.find(std::string(spec.name));
    if (it != raw_values.end()) {
      values.emplace(spec.name, convert(spec, it->second));
    } else if (!spec.fallback.empty()) {
      values.emplace(spec.name, convert(spec, spec.fallback));
    }
  }
  values["command"] = std::string(command_name(command));
  if (!values.count("lambda")) values["lambda"] = 2.5 * std::get<double>(values.at("kappa"));
  if (!values.count("T")) values["T"] = command == Command::Zeno ? 1.0 : 10.0;

  RunConfig cfg(command, std::move(values));
  validate(cfg);
  return cfg;
}

}  // namespace cqec::cli
