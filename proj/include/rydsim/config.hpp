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

#ifndef RYDSIM_CONFIG_HPP
#define RYDSIM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydsim/hamiltonian.hpp"

namespace rydsim {

/// Configuration problem with the offending location baked into what().
/// The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed and validated run description.
///
/// Config files are flat `key = value` text with dotted section names and
/// `#` comments. Boundary units: frequencies in MHz (converted to rad/us
/// as 2*pi*f), times in us, angles in degrees. `values` keeps the fully
/// resolved key/value strings for the manifest.
struct RunConfig {
  std::map<std::string, std::string> values;

  std::string experiment;
  SystemParams system;  // internal units

  double t_rise = 0.2;          // us
  double wait = 0.0;            // us
  double stirap_phi = 0.0;      // rad
  double ramsey_angle = M_PI / 2.0;
  double ramsey_error = 0.0;

  double dt = 1e-4;  // us
  int sample_stride = 20;
  double t_ex = 5.0;  // us, absorption window

  long long shots = 50;
  std::uint64_t seed = 1;
  bool noise = false;

  double scan_start = 0.0, scan_stop = 0.0;
  int scan_points = 0;
  double scan2_start = 0.0, scan2_stop = 0.0;
  int scan2_points = 0;

  int fit_walkers = 32;
  int fit_steps = 2000;
  int fit_burn_in = 500;
  int tomo_replicates = 200;

  // spectroscopy drive overrides used by autler-townes / avoided-crossing
  double spectro_omega_p = -1.0;  // rad/us, <0 = use system value
  double spectro_omega_s = -1.0;

  /// System params with the spectroscopy drive substituted.
  SystemParams spectroscopy_system() const;
};

/// Parse config text. `source` names the file for error messages.
RunConfig parse_config(const std::string& text, const std::string& source);

/// Load a `.cfg` file, or a manifest JSON (its "config" object is replayed).
RunConfig load_config(const std::string& path);

/// Merge `key=value` overrides, then revalidate the whole configuration
/// once (later assignments win, validation sees the final state).
void apply_overrides(RunConfig& cfg, const std::vector<std::string>& assignments);
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Known experiment names.
const std::vector<std::string>& experiment_names();

}  // namespace rydsim

#endif
