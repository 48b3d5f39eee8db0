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

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rydsim/config.hpp"
#include "rydsim/experiments.hpp"
#include "rydsim/inference.hpp"
#include "rydsim/output.hpp"
#include "rydsim/tomography.hpp"

namespace {

using namespace rydsim;

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm_utc);
  return buf;
}

std::vector<double> linspace(double start, double stop, int points) {
  std::vector<double> xs;
  xs.reserve(static_cast<size_t>(points));
  if (points == 1) {
    xs.push_back(start);
    return xs;
  }
  const double step = (stop - start) / static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) xs.push_back(start + step * i);
  return xs;
}

struct RunContext {
  RunConfig cfg;
  std::string out_dir;
  std::string format;  // csv | json
  std::string prefix;  // out_dir/experiment-timestamp
  std::vector<std::string> outputs;

  std::string path(const std::string& suffix) const { return prefix + suffix; }
  void emit(const std::string& suffix, const std::string& content,
            std::vector<std::string>& files) {
    const std::string p = path(suffix);
    write_text_file(p, content);
    files.push_back(p);
  }
};

std::map<std::string, std::string> base_metadata(const RunConfig& cfg) {
  std::map<std::string, std::string> meta;
  meta["experiment"] = cfg.experiment;
  meta["seed"] = std::to_string(cfg.seed);
  meta["dt_us"] = format_number(cfg.dt);
  return meta;
}

void run_stirap_single(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  ScanOptions opt{cfg.dt, cfg.sample_stride};
  const StirapRun run = run_single_stirap_full(cfg.system, cfg.t_rise, opt);
  const LevelModel model = build_model(cfg.system, 5);
  // trajectories are tabular time series; they are always written as CSV
  ctx.emit(".csv", trajectory_to_csv(run.trajectory, model), ctx.outputs);
  ctx.emit("-sequence.json", sequence_to_json(single_stirap(cfg.system, cfg.t_rise)),
           ctx.outputs);
  std::cout << "single STIRAP transfer efficiency = " << format_number(run.efficiency)
            << "\n"
            << "P_r after the trailing pump ramp  = " << format_number(run.p_r_final)
            << "\n";
}

void run_stirap_double(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  ScanOptions opt{cfg.dt, cfg.sample_stride};
  const DoubleStirapRun run =
      run_double_stirap_full(cfg.system, cfg.t_rise, cfg.wait, cfg.stirap_phi, opt);
  const LevelModel model = build_model(cfg.system, 5);
  ctx.emit(".csv", trajectory_to_csv(run.trajectory, model), ctx.outputs);
  ctx.emit("-sequence.json",
           sequence_to_json(double_stirap(cfg.system, cfg.t_rise, cfg.wait, cfg.stirap_phi)),
           ctx.outputs);
  std::cout << "double STIRAP return P_0 = " << format_number(run.p0) << "\n";
}

void run_phase_scan(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  PhaseScanOptions opt;
  opt.t_rise = cfg.t_rise;
  opt.wait = cfg.wait;
  opt.dt = cfg.dt;
  opt.sample_stride = cfg.sample_stride;
  opt.ramsey_angle = cfg.ramsey_angle;
  opt.ramsey_error = cfg.ramsey_error;
  const double deg = M_PI / 180.0;
  const std::vector<double> phis =
      linspace(cfg.scan_start * deg, cfg.scan_stop * deg, cfg.scan_points);
  ExperimentResult result = run_phase_scan(cfg.system, phis, opt);
  if (cfg.noise) result = add_projection_noise(result, cfg.shots, cfg.seed);

  const FringeFit fit = fit_fringe(result.x, result.p);
  std::cout << "fringe fit (model curve): center = " << format_number(fit.center)
            << ", contrast = " << format_number(fit.contrast)
            << ", phi_dyn_deg = " << format_number(fit.phi_dyn / deg) << "\n";
  if (cfg.noise) {
    const FitModel model = FitModel::fringe();
    const Chain chain =
        sample_posterior(model, result, cfg.fit_walkers, cfg.fit_steps, cfg.seed);
    const std::vector<Percentiles> pct = summarize(chain, cfg.fit_burn_in);
    std::cout << "posterior contrast C: " << format_number(pct[1].p50) << " (+"
              << format_number(pct[1].p84 - pct[1].p50) << "/-"
              << format_number(pct[1].p50 - pct[1].p16) << ")\n"
              << "posterior phi_dyn_deg: " << format_number(pct[2].p50 / deg) << " (+"
              << format_number((pct[2].p84 - pct[2].p50) / deg) << "/-"
              << format_number((pct[2].p50 - pct[2].p16) / deg) << ")\n";
  }
  ctx.emit(ctx.format == "json" ? ".json" : ".csv",
           ctx.format == "json" ? result_to_json(result, base_metadata(cfg))
                                : result_to_csv(result, base_metadata(cfg)),
           ctx.outputs);
}

void run_lifetime_fit(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  ScanOptions opt{cfg.dt, cfg.sample_stride};
  const std::vector<double> waits = linspace(cfg.scan_start, cfg.scan_stop, cfg.scan_points);
  ExperimentResult result;
  result.x_name = "wait_us";
  result.x = waits;
  for (double w : waits)
    result.p.push_back(run_double_stirap(cfg.system, cfg.t_rise, w, cfg.stirap_phi, opt));
  result = add_projection_noise(result, cfg.shots, cfg.seed);

  const FitModel model = FitModel::lifetime();
  const Chain chain =
      sample_posterior(model, result, cfg.fit_walkers, cfg.fit_steps, cfg.seed);
  const std::vector<Percentiles> pct = summarize(chain, cfg.fit_burn_in);
  std::cout << "lifetime tau_us: " << format_number(pct[1].p50) << " (+"
            << format_number(pct[1].p84 - pct[1].p50) << "/-"
            << format_number(pct[1].p50 - pct[1].p16) << ")\n"
            << "amplitude A: " << format_number(pct[0].p50) << " (+"
            << format_number(pct[0].p84 - pct[0].p50) << "/-"
            << format_number(pct[0].p50 - pct[0].p16) << ")\n"
            << "acceptance fraction: " << format_number(chain.acceptance_fraction) << "\n";
  ctx.emit(ctx.format == "json" ? ".json" : ".csv",
           ctx.format == "json" ? result_to_json(result, base_metadata(cfg))
                                : result_to_csv(result, base_metadata(cfg)),
           ctx.outputs);
  ctx.emit("-chain.csv", chain_to_csv(chain, {"A", "tau_us"}, model, result), ctx.outputs);
}

void run_autler_townes(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const SystemParams sys = ctx.cfg.spectroscopy_system();
  if (absorption_pump_too_strong(sys))
    std::cerr << "warning: omega_p >= gamma_e/5, outside the weak-pump absorption regime\n";
  const double mhz = 2.0 * M_PI;
  const std::vector<double> dps =
      linspace(cfg.scan_start * mhz, cfg.scan_stop * mhz, cfg.scan_points);
  ExperimentResult result = run_absorption_scan(sys, dps, cfg.t_ex);
  if (cfg.noise) result = add_projection_noise(result, cfg.shots, cfg.seed);
  std::map<std::string, std::string> meta = base_metadata(cfg);
  meta["omega_s_mhz"] = format_number(sys.omega_s / mhz);
  meta["t_ex_us"] = format_number(cfg.t_ex);
  ctx.emit(ctx.format == "json" ? ".json" : ".csv",
           ctx.format == "json" ? result_to_json(result, meta)
                                : result_to_csv(result, meta),
           ctx.outputs);
  std::cout << "absorption scan written (" << result.x.size() << " points)\n";
}

void run_avoided_crossing(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const SystemParams sys = ctx.cfg.spectroscopy_system();
  if (absorption_pump_too_strong(sys))
    std::cerr << "warning: omega_p >= gamma_e/5, outside the weak-pump absorption regime\n";
  const double mhz = 2.0 * M_PI;
  const std::vector<double> dps =
      linspace(cfg.scan_start * mhz, cfg.scan_stop * mhz, cfg.scan_points);
  const std::vector<double> dss =
      linspace(cfg.scan2_start * mhz, cfg.scan2_stop * mhz, cfg.scan2_points);
  const CrossingMap map = run_avoided_crossing(sys, dps, dss, cfg.t_ex);
  std::map<std::string, std::string> meta = base_metadata(cfg);
  meta["omega_s_mhz"] = format_number(sys.omega_s / mhz);
  meta["t_ex_us"] = format_number(cfg.t_ex);
  ctx.emit(ctx.format == "json" ? ".json" : ".csv",
           ctx.format == "json" ? crossing_to_json(map, meta) : crossing_to_csv(map, meta),
           ctx.outputs);
  std::cout << "avoided-crossing map written (" << map.delta_p_mhz.size() << " x "
            << map.delta_s_mhz.size() << " points)\n";
}

void run_tomography(RunContext& ctx) {
  const RunConfig& cfg = ctx.cfg;
  TomographyOptions opt;
  opt.phi = cfg.stirap_phi == 0.0 ? M_PI : cfg.stirap_phi;
  opt.t_rise = cfg.t_rise;
  opt.dt = cfg.dt;
  opt.sample_stride = cfg.sample_stride;
  opt.ramsey_error = cfg.ramsey_error;
  const TomographyDataset data = simulate_tomography(cfg.system, cfg.shots, cfg.seed, opt);
  const ProcessMatrix chi = reconstruct_process(data);
  const ProcessMatrix ideal = ideal_sigma_z_process();
  const double fidelity = process_fidelity(chi, ideal);
  const BootstrapResult boots =
      bootstrap_errors(data, cfg.tomo_replicates, cfg.seed, ideal);
  std::cout << "process fidelity vs sigma_z pi-rotation: " << format_number(fidelity)
            << " (+" << format_number(boots.p84 - boots.p50) << "/-"
            << format_number(boots.p50 - boots.p16) << ", "
            << cfg.tomo_replicates << " bootstrap replicates)\n";
  ctx.emit("-dataset.json", dataset_to_json(data), ctx.outputs);
  ctx.emit("-chi.json", process_to_json(chi), ctx.outputs);
  std::string bloch_csv = "bx,by,bz\n";
  for (const auto& v : bloch_image(chi, 200))
    bloch_csv += format_number(v[0]) + "," + format_number(v[1]) + "," +
                 format_number(v[2]) + "\n";
  ctx.emit("-bloch.csv", bloch_csv, ctx.outputs);
}

int run_command(const std::string& config_path, const std::vector<std::string>& overrides,
                const std::string& out_dir, long long seed_override, bool seed_given,
                const std::string& format) {
  RunConfig cfg = load_config(config_path);
  std::vector<std::string> assignments = overrides;
  if (seed_given) assignments.push_back("run.seed=" + std::to_string(seed_override));
  apply_overrides(cfg, assignments);

  std::filesystem::create_directories(out_dir);
  RunContext ctx;
  ctx.cfg = cfg;
  ctx.out_dir = out_dir;
  ctx.format = format;
  ctx.prefix = out_dir + "/" + cfg.experiment + "-" + timestamp_utc();

  if (cfg.experiment == "stirap-single") run_stirap_single(ctx);
  else if (cfg.experiment == "stirap-double") run_stirap_double(ctx);
  else if (cfg.experiment == "phase-scan") run_phase_scan(ctx);
  else if (cfg.experiment == "lifetime-fit") run_lifetime_fit(ctx);
  else if (cfg.experiment == "autler-townes") run_autler_townes(ctx);
  else if (cfg.experiment == "avoided-crossing") run_avoided_crossing(ctx);
  else if (cfg.experiment == "tomography") run_tomography(ctx);
  else throw ConfigError("unknown experiment '" + cfg.experiment + "'");

  const std::string manifest_path = ctx.path(".manifest.json");
  write_text_file(manifest_path, manifest_json(ctx.cfg, ctx.outputs));
  for (const std::string& f : ctx.outputs) std::cout << "wrote " << f << "\n";
  std::cout << "wrote " << manifest_path << "\n";
  return 0;
}

int plot_command(const std::string& csv_path, std::string out_path) {
  const std::string csv_text = read_text_file(csv_path);
  const std::string script = plot_script_for_csv(csv_text, csv_path);
  if (out_path.empty()) out_path = csv_path + ".py";
  write_text_file(out_path, script);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rydsim: trapped Rydberg-ion experiment simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  std::string config_path, out_dir = ".", format = "csv";
  std::vector<std::string> overrides;
  long long seed_override = 0;
  run->add_option("--config", config_path, "config file (.cfg or manifest .json)")
      ->required();
  run->add_option("--set", overrides, "override, key=value (repeatable)");
  run->add_option("--out", out_dir, "output directory (default .)");
  auto* seed_opt = run->add_option("--seed", seed_override, "override run.seed");
  run->add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* plot = app.add_subcommand("plot", "emit a plot script for a result CSV");
  std::string plot_csv, plot_out;
  plot->add_option("csv", plot_csv, "result CSV file")->required();
  plot->add_option("--out", plot_out, "script path (default <csv>.py)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return run_command(config_path, overrides, out_dir, seed_override,
                         seed_opt->count() > 0, format);
    return plot_command(plot_csv, plot_out);
  } catch (const rydsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const rydsim::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
