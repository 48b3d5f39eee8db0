// Copyright 2026 The rydsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rydsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rydsim {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kDegToRad = M_PI / 180.0;

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "experiment",
      "system.omega_p", "system.omega_s", "system.delta_p", "system.delta_s",
      "system.phi", "system.gamma_e", "system.tau_r",
      "system.linewidth_p", "system.linewidth_s",
      "system.branch_e_s_minus", "system.branch_e_s_plus",
      "system.branch_r_s_minus", "system.branch_r_s_plus", "system.branch_r_d",
      "system.stark_1",
      "pulse.t_rise", "pulse.wait", "pulse.phi",
      "pulse.ramsey_angle", "pulse.ramsey_error",
      "sim.dt", "sim.sample_stride", "sim.t_ex",
      "run.shots", "run.seed", "run.noise",
      "scan.start", "scan.stop", "scan.points",
      "scan2.start", "scan2.stop", "scan2.points",
      "fit.walkers", "fit.steps", "fit.burn_in",
      "tomo.replicates",
      "spectro.omega_p", "spectro.omega_s",
  };
  return keys;
}

class View {
 public:
  View(const std::map<std::string, std::string>& values, const std::string& source)
      : values_(values), source_(source) {}

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    return parse_number(key);
  }

  double required_number(const std::string& key) const {
    if (!has(key)) fail("missing required field '" + key + "'");
    return parse_number(key);
  }

  long long integer(const std::string& key, long long fallback) const {
    const double v = number(key, static_cast<double>(fallback));
    if (std::abs(v - std::round(v)) > 1e-9)
      fail("field '" + key + "' must be an integer");
    return static_cast<long long>(std::llround(v));
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = values_.at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail("field '" + key + "' must be a boolean");
    return false;
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(source_ + ": " + msg);
  }

 private:
  double parse_number(const std::string& key) const {
    const std::string& raw = values_.at(key);
    if (raw == "inf" || raw == "infinity") return 1e30;
    try {
      size_t used = 0;
      const double v = std::stod(raw, &used);
      if (used != raw.size()) throw std::invalid_argument(raw);
      return v;
    } catch (const std::exception&) {
      fail("field '" + key + "' has non-numeric value '" + raw + "'");
    }
  }

  const std::map<std::string, std::string>& values_;
  const std::string& source_;
};

RunConfig derive(std::map<std::string, std::string> values, const std::string& source) {
  RunConfig cfg;
  cfg.values = std::move(values);
  const View v(cfg.values, source);

  cfg.experiment = v.text("experiment", "");
  if (cfg.experiment.empty()) v.fail("missing required field 'experiment'");
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), cfg.experiment) == names.end())
    v.fail("unknown experiment '" + cfg.experiment + "'");

  SystemParams& s = cfg.system;
  s.omega_p = kTwoPi * v.required_number("system.omega_p");
  s.omega_s = kTwoPi * v.required_number("system.omega_s");
  s.delta_p = kTwoPi * v.number("system.delta_p", 0.0);
  s.delta_s = kTwoPi * v.number("system.delta_s", 0.0);
  s.phi = kDegToRad * v.number("system.phi", 0.0);
  s.gamma_e = kTwoPi * v.required_number("system.gamma_e");
  s.tau_r = v.required_number("system.tau_r");
  s.gamma_laser_p = kTwoPi * v.number("system.linewidth_p", 0.0);
  s.gamma_laser_s = kTwoPi * v.number("system.linewidth_s", 0.0);
  s.branch_e_to_s_minus = v.number("system.branch_e_s_minus", 0.5);
  s.branch_e_to_s_plus = v.number("system.branch_e_s_plus", 0.5);
  s.branch_r_to_s_minus = v.number("system.branch_r_s_minus", 0.5);
  s.branch_r_to_s_plus = v.number("system.branch_r_s_plus", 0.5);
  s.branch_r_to_d = v.number("system.branch_r_d", 0.0);
  s.stark_1 = kTwoPi * v.number("system.stark_1", 0.0);
  try {
    s.validate();
  } catch (const std::exception& e) {
    v.fail(e.what());
  }

  cfg.t_rise = v.number("pulse.t_rise", 0.2);
  cfg.wait = v.number("pulse.wait", 0.0);
  cfg.stirap_phi = kDegToRad * v.number("pulse.phi", 0.0);
  cfg.ramsey_angle = kDegToRad * v.number("pulse.ramsey_angle", 90.0);
  cfg.ramsey_error = kDegToRad * v.number("pulse.ramsey_error", 0.0);

  cfg.dt = v.number("sim.dt", 1e-4);
  cfg.sample_stride = static_cast<int>(v.integer("sim.sample_stride", 20));
  cfg.t_ex = v.number("sim.t_ex", 5.0);
  if (!(cfg.dt > 0.0)) v.fail("sim.dt must be > 0");
  if (cfg.sample_stride < 1) v.fail("sim.sample_stride must be >= 1");

  cfg.shots = v.integer("run.shots", 50);
  cfg.seed = static_cast<std::uint64_t>(v.integer("run.seed", 1));
  cfg.noise = v.boolean("run.noise", false);
  if (cfg.shots < 1) v.fail("run.shots must be >= 1");

  cfg.scan_start = v.number("scan.start", 0.0);
  cfg.scan_stop = v.number("scan.stop", 0.0);
  cfg.scan_points = static_cast<int>(v.integer("scan.points", 0));
  cfg.scan2_start = v.number("scan2.start", 0.0);
  cfg.scan2_stop = v.number("scan2.stop", 0.0);
  cfg.scan2_points = static_cast<int>(v.integer("scan2.points", 0));

  cfg.fit_walkers = static_cast<int>(v.integer("fit.walkers", 32));
  cfg.fit_steps = static_cast<int>(v.integer("fit.steps", 2000));
  cfg.fit_burn_in = static_cast<int>(v.integer("fit.burn_in", 500));
  cfg.tomo_replicates = static_cast<int>(v.integer("tomo.replicates", 200));
  if (cfg.fit_burn_in >= cfg.fit_steps) v.fail("fit.burn_in must be < fit.steps");

  cfg.spectro_omega_p =
      v.has("spectro.omega_p") ? kTwoPi * v.required_number("spectro.omega_p") : -1.0;
  cfg.spectro_omega_s =
      v.has("spectro.omega_s") ? kTwoPi * v.required_number("spectro.omega_s") : -1.0;

  const bool needs_scan =
      cfg.experiment == "phase-scan" || cfg.experiment == "lifetime-fit" ||
      cfg.experiment == "autler-townes" || cfg.experiment == "avoided-crossing";
  if (needs_scan && cfg.scan_points < 2)
    v.fail("experiment '" + cfg.experiment + "' needs scan.points >= 2");
  if (cfg.experiment == "avoided-crossing" && cfg.scan2_points < 2)
    v.fail("avoided-crossing needs scan2.points >= 2");
  return cfg;
}

}  // namespace

SystemParams RunConfig::spectroscopy_system() const {
  SystemParams s = system;
  if (spectro_omega_p >= 0.0) s.omega_p = spectro_omega_p;
  if (spectro_omega_s >= 0.0) s.omega_s = spectro_omega_s;
  return s;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "stirap-single", "stirap-double",    "phase-scan", "lifetime-fit",
      "autler-townes", "avoided-crossing", "tomography"};
  return names;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(source + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    if (known_keys().count(key) == 0)
      throw ConfigError(source + ":" + std::to_string(line_no) + ": unknown key '" +
                        key + "'");
    if (values.count(key) > 0)
      throw ConfigError(source + ":" + std::to_string(line_no) + ": duplicate key '" +
                        key + "'");
    values[key] = value;
  }
  return derive(std::move(values), source);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    // manifest replay: the resolved config map is embedded under "config"
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
      throw ConfigError(path + ": invalid manifest JSON: " + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object())
      throw ConfigError(path + ": manifest lacks a 'config' object");
    std::map<std::string, std::string> values;
    for (const auto& [key, val] : j["config"].items()) {
      if (known_keys().count(key) == 0)
        throw ConfigError(path + ": unknown key '" + key + "' in manifest");
      values[key] = val.is_string() ? val.get<std::string>() : val.dump();
    }
    return derive(std::move(values), path);
  }
  return parse_config(text, path);
}

void apply_overrides(RunConfig& cfg, const std::vector<std::string>& assignments) {
  if (assignments.empty()) return;
  std::map<std::string, std::string> values = cfg.values;
  for (const std::string& assignment : assignments) {
    const size_t eq = assignment.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override '" + assignment + "' is not of the form key=value");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    if (known_keys().count(key) == 0)
      throw ConfigError("override uses unknown key '" + key + "'");
    if (value.empty()) throw ConfigError("override '" + key + "' has empty value");
    values[key] = value;
  }
  cfg = derive(std::move(values), "overrides");
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  apply_overrides(cfg, {assignment});
}

}  // namespace rydsim
