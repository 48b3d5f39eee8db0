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

#include "rydsim/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rydsim {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::string metadata_block(const std::map<std::string, std::string>& metadata) {
  std::string out;
  for (const auto& [k, v] : metadata) out += "# " + k + " = " + v + "\n";
  return out;
}

nlohmann::json metadata_json(const std::map<std::string, std::string>& metadata) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : metadata) j[k] = v;
  return j;
}

}  // namespace

std::string result_to_csv(const ExperimentResult& result,
                          const std::map<std::string, std::string>& metadata) {
  std::string out = metadata_block(metadata);
  out += result.x_name + ",p_model";
  const bool with_counts = !result.counts.empty();
  if (with_counts) out += ",counts,shots";
  out += "\n";
  for (size_t k = 0; k < result.x.size(); ++k) {
    out += format_number(result.x[k]) + "," + format_number(result.p[k]);
    if (with_counts)
      out += "," + std::to_string(result.counts[k]) + "," + std::to_string(result.shots);
    out += "\n";
  }
  return out;
}

std::string result_to_json(const ExperimentResult& result,
                           const std::map<std::string, std::string>& metadata) {
  nlohmann::json j;
  j["metadata"] = metadata_json(metadata);
  j["x_name"] = result.x_name;
  j["x"] = result.x;
  j["p_model"] = result.p;
  if (!result.counts.empty()) {
    j["counts"] = result.counts;
    j["shots"] = result.shots;
    j["seed"] = result.seed;
  }
  return j.dump(2);
}

std::string trajectory_to_csv(const Trajectory& traj, const LevelModel& model) {
  static const Level kOrder[5] = {Level::s_minus, Level::s_plus, Level::zero, Level::e,
                                  Level::r};
  std::string out = "time_us";
  std::vector<int> indices;
  for (Level l : kOrder) {
    const int idx = model.index_of(l);
    if (idx < 0) continue;
    indices.push_back(idx);
    out += std::string(",P_") + level_label(l);
  }
  const int i0 = model.index_of(Level::zero);
  const int ir = model.index_of(Level::r);
  const int i1 = model.index_of(Level::s_minus);
  out += ",re_rho_0r,im_rho_0r";
  if (i1 >= 0) out += ",re_rho_10,im_rho_10";
  out += "\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    out += format_number(traj.times[i]);
    for (int idx : indices)
      out += "," + format_number(traj.populations[i][static_cast<size_t>(idx)]);
    const ComplexMatrix& m = traj.states[i];
    out += "," + format_number(m(i0, ir).real()) + "," + format_number(m(i0, ir).imag());
    if (i1 >= 0)
      out += "," + format_number(m(i1, i0).real()) + "," + format_number(m(i1, i0).imag());
    out += "\n";
  }
  return out;
}

std::string crossing_to_csv(const CrossingMap& map,
                            const std::map<std::string, std::string>& metadata) {
  std::string out = metadata_block(metadata);
  out += "delta_p_MHz,delta_s_MHz,p_model\n";
  for (size_t si = 0; si < map.delta_s_mhz.size(); ++si)
    for (size_t pi = 0; pi < map.delta_p_mhz.size(); ++pi)
      out += format_number(map.delta_p_mhz[pi]) + "," + format_number(map.delta_s_mhz[si]) +
             "," + format_number(map.prob[si][pi]) + "\n";
  return out;
}

std::string crossing_to_json(const CrossingMap& map,
                             const std::map<std::string, std::string>& metadata) {
  nlohmann::json j;
  j["metadata"] = metadata_json(metadata);
  j["delta_p_MHz"] = map.delta_p_mhz;
  j["delta_s_MHz"] = map.delta_s_mhz;
  j["p_model"] = map.prob;
  return j.dump(2);
}

std::string chain_to_csv(const Chain& chain, const std::vector<std::string>& names,
                         const FitModel& model, const ExperimentResult& data) {
  std::string out = "step,walker";
  for (const std::string& n : names) out += "," + n;
  out += ",log_posterior\n";
  std::vector<double> params(static_cast<size_t>(chain.n_params));
  for (int s = 0; s < chain.steps; ++s)
    for (int w = 0; w < chain.walkers; ++w) {
      out += std::to_string(s) + "," + std::to_string(w);
      for (int j = 0; j < chain.n_params; ++j) {
        params[static_cast<size_t>(j)] = chain.at(s, w, j);
        out += "," + format_number(params[static_cast<size_t>(j)]);
      }
      out += "," + format_number(log_posterior(model, params, data)) + "\n";
    }
  return out;
}

std::string manifest_json(const RunConfig& cfg, const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["artifact"] = "rydsim";
  j["version"] = "0.1.0";
  j["experiment"] = cfg.experiment;
  j["seed"] = cfg.seed;
  j["dt_us"] = cfg.dt;
  j["config"] = metadata_json(cfg.values);
  j["outputs"] = outputs;
  return j.dump(2);
}

namespace {

std::vector<std::string> csv_columns(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cols.push_back(cell);
    return cols;
  }
  return {};
}

bool has_column(const std::vector<std::string>& cols, const std::string& name) {
  for (const std::string& c : cols)
    if (c == name) return true;
  return false;
}

std::string python_header(const std::string& csv_path) {
  return "#!/usr/bin/env python3\n"
         "import csv\n"
         "import math\n"
         "import matplotlib.pyplot as plt\n"
         "\n"
         "PATH = \"" + csv_path + "\"\n"
         "\n"
         "meta = {}\n"
         "rows = []\n"
         "with open(PATH) as fh:\n"
         "    header = None\n"
         "    for raw in fh:\n"
         "        line = raw.strip()\n"
         "        if not line:\n"
         "            continue\n"
         "        if line.startswith(\"#\"):\n"
         "            if \"=\" in line:\n"
         "                key, _, val = line[1:].partition(\"=\")\n"
         "                meta[key.strip()] = val.strip()\n"
         "            continue\n"
         "        cells = line.split(\",\")\n"
         "        if header is None:\n"
         "            header = cells\n"
         "            continue\n"
         "        rows.append({k: v for k, v in zip(header, cells)})\n"
         "\n"
         "def col(name, cast=float):\n"
         "    return [cast(r[name]) for r in rows]\n"
         "\n";
}

}  // namespace

std::string plot_script_for_csv(const std::string& csv_text, const std::string& csv_path) {
  const std::vector<std::string> cols = csv_columns(csv_text);
  if (cols.empty()) throw ConfigError(csv_path + ": empty CSV, nothing to plot");

  std::string body;
  if (has_column(cols, "phi_rad")) {
    body =
        "phi = col(\"phi_rad\")\n"
        "p = col(\"p_model\")\n"
        "plt.plot([x * 180.0 / math.pi for x in phi], p, \"o-\", label=\"model\")\n";
    if (has_column(cols, "counts"))
      body +=
          "counts = col(\"counts\")\n"
          "shots = col(\"shots\")\n"
          "freq = [c / s for c, s in zip(counts, shots)]\n"
          "err = [math.sqrt(max(f * (1 - f), 1e-9) / s) for f, s in zip(freq, shots)]\n"
          "plt.errorbar([x * 180.0 / math.pi for x in phi], freq, yerr=err,\n"
          "             fmt=\".\", capsize=2, label=\"counts\")\n";
    body +=
        "plt.xlabel(\"phase step (deg)\")\n"
        "plt.ylabel(\"P(|0>)\")\n"
        "plt.ylim(-0.02, 1.02)\n"
        "plt.legend()\n"
        "plt.title(\"geometric-phase fringe\")\n"
        "plt.tight_layout()\n"
        "plt.show()\n";
  } else if (has_column(cols, "delta_p_MHz") && has_column(cols, "delta_s_MHz")) {
    body =
        "dp = col(\"delta_p_MHz\")\n"
        "ds = col(\"delta_s_MHz\")\n"
        "p = col(\"p_model\")\n"
        "dp_axis = sorted(set(dp))\n"
        "ds_axis = sorted(set(ds))\n"
        "grid = [[0.0] * len(dp_axis) for _ in ds_axis]\n"
        "for x, y, v in zip(dp, ds, p):\n"
        "    grid[ds_axis.index(y)][dp_axis.index(x)] = v\n"
        "plt.pcolormesh(dp_axis, ds_axis, grid, shading=\"nearest\")\n"
        "plt.colorbar(label=\"excitation probability\")\n"
        "omega_s = float(meta.get(\"omega_s_mhz\", \"0\"))\n"
        "if omega_s > 0:\n"
        "    # dressed-state resonance curves overlaid in black\n"
        "    for sign in (+1, -1):\n"
        "        xs = [0.5 * (-d + sign * math.sqrt(d * d + omega_s * omega_s))\n"
        "              for d in ds_axis]\n"
        "        plt.plot(xs, ds_axis, \"k-\", linewidth=1)\n"
        "    plt.xlim(min(dp_axis), max(dp_axis))\n"
        "plt.xlabel(\"pump detuning (MHz)\")\n"
        "plt.ylabel(\"Stokes detuning (MHz)\")\n"
        "plt.title(\"avoided crossing\")\n"
        "plt.tight_layout()\n"
        "plt.show()\n";
  } else if (has_column(cols, "delta_p_MHz")) {
    body =
        "dp = col(\"delta_p_MHz\")\n"
        "p = col(\"p_model\")\n"
        "plt.plot(dp, p, \"o-\")\n"
        "plt.xlabel(\"pump detuning (MHz)\")\n"
        "plt.ylabel(\"excitation probability\")\n"
        "plt.title(\"absorption profile\")\n"
        "plt.tight_layout()\n"
        "plt.show()\n";
  } else if (has_column(cols, "wait_us")) {
    body =
        "t = col(\"wait_us\")\n"
        "p = col(\"p_model\")\n"
        "plt.plot(t, p, \"o-\", label=\"model\")\n";
    if (has_column(cols, "counts"))
      body +=
          "counts = col(\"counts\")\n"
          "shots = col(\"shots\")\n"
          "freq = [c / s for c, s in zip(counts, shots)]\n"
          "plt.plot(t, freq, \".\", label=\"counts\")\n";
    body +=
        "plt.xlabel(\"wait time (us)\")\n"
        "plt.ylabel(\"P(|0>)\")\n"
        "plt.legend()\n"
        "plt.title(\"Rydberg lifetime decay\")\n"
        "plt.tight_layout()\n"
        "plt.show()\n";
  } else if (has_column(cols, "time_us")) {
    body =
        "t = col(\"time_us\")\n"
        "for name in rows[0]:\n"
        "    if name.startswith(\"P_\"):\n"
        "        plt.plot(t, col(name), label=name)\n"
        "plt.xlabel(\"time (us)\")\n"
        "plt.ylabel(\"population\")\n"
        "plt.legend()\n"
        "plt.title(\"populations\")\n"
        "plt.tight_layout()\n"
        "plt.show()\n";
  } else {
    throw ConfigError(csv_path + ": unrecognized column layout for plotting");
  }
  return python_header(csv_path) + body;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing file: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace rydsim
