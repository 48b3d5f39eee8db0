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

#ifndef RYDSIM_OUTPUT_HPP
#define RYDSIM_OUTPUT_HPP

#include <map>
#include <string>
#include <vector>

#include "rydsim/config.hpp"
#include "rydsim/experiments.hpp"
#include "rydsim/inference.hpp"

namespace rydsim {

/// Deterministic "%.12g" rendering used for every numeric output so that
/// reruns with the same seed are byte-identical.
std::string format_number(double v);

/// Scan result as CSV text. Metadata lines are '#' comments so that the
/// plot scripts can recover experiment context (e.g. the Stokes Rabi
/// frequency for the ac Stark overlay).
std::string result_to_csv(const ExperimentResult& result,
                          const std::map<std::string, std::string>& metadata);
std::string result_to_json(const ExperimentResult& result,
                           const std::map<std::string, std::string>& metadata);

std::string trajectory_to_csv(const Trajectory& traj, const LevelModel& model);

std::string crossing_to_csv(const CrossingMap& map,
                            const std::map<std::string, std::string>& metadata);
std::string crossing_to_json(const CrossingMap& map,
                             const std::map<std::string, std::string>& metadata);

std::string chain_to_csv(const Chain& chain, const std::vector<std::string>& names,
                         const FitModel& model, const ExperimentResult& data);

/// Run manifest: resolved config, seed, outputs, version. Replayable via
/// `load_config` on the manifest file itself.
std::string manifest_json(const RunConfig& cfg, const std::vector<std::string>& outputs);

/// Self-contained matplotlib script for a result CSV, chosen from the
/// column layout. Throws ConfigError on unrecognized or empty layouts.
std::string plot_script_for_csv(const std::string& csv_text, const std::string& csv_path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace rydsim

#endif
