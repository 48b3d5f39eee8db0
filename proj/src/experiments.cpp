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

#include "rydsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rydsim/optimize.hpp"
#include "rydsim/rng.hpp"

namespace rydsim {

namespace {

size_t sample_index_at(const Trajectory& traj, double t) {
  size_t best = 0;
  double best_diff = std::abs(traj.times[0] - t);
  for (size_t i = 1; i < traj.times.size(); ++i) {
    const double diff = std::abs(traj.times[i] - t);
    if (diff < best_diff) {
      best = i;
      best_diff = diff;
    }
  }
  return best;
}

}  // namespace

StirapRun run_single_stirap_full(const SystemParams& p, double t_rise,
                                 const ScanOptions& opt) {
  const LevelModel model = build_model(p, 5);
  const PulseSequence seq = single_stirap(p, t_rise);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  Trajectory traj = evolve(model, seq, rho0, opt.dt, opt.sample_stride);
  StirapRun run;
  const size_t i_pole = sample_index_at(traj, 2.0 * t_rise);
  run.efficiency = traj.population_at(i_pole, Level::r, model);
  run.p_r_final = traj.population_at(traj.times.size() - 1, Level::r, model);
  run.trajectory = std::move(traj);
  return run;
}

double run_single_stirap(const SystemParams& p, double t_rise, const ScanOptions& opt) {
  return run_single_stirap_full(p, t_rise, opt).efficiency;
}

DoubleStirapRun run_double_stirap_full(const SystemParams& p, double t_rise,
                                       double wait, double phi,
                                       const ScanOptions& opt) {
  const LevelModel model = build_model(p, 5);
  const PulseSequence seq = double_stirap(p, t_rise, wait, phi);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  Trajectory traj = evolve(model, seq, rho0, opt.dt, opt.sample_stride);
  DoubleStirapRun run;
  run.p0 = traj.population_at(traj.times.size() - 1, Level::zero, model);
  run.trajectory = std::move(traj);
  return run;
}

double run_double_stirap(const SystemParams& p, double t_rise, double wait,
                         double phi, const ScanOptions& opt) {
  return run_double_stirap_full(p, t_rise, wait, phi, opt).p0;
}

ExperimentResult run_phase_scan(const SystemParams& p,
                                const std::vector<double>& phis,
                                const PhaseScanOptions& opt) {
  if (phis.empty()) throw std::invalid_argument("run_phase_scan: empty phi list");
  const LevelModel model = build_model(p, 5);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  const double angle = opt.ramsey_angle + opt.ramsey_error;
  ExperimentResult result;
  result.x_name = "phi_rad";
  result.x = phis;
  result.p.reserve(phis.size());
  for (double phi : phis) {
    const PulseSequence seq =
        ramsey_wrap(double_stirap(p, opt.t_rise, opt.wait, phi), angle, 0.0, 0.0);
    const Trajectory traj = evolve(model, seq, rho0, opt.dt, opt.sample_stride);
    result.p.push_back(traj.population_at(traj.times.size() - 1, Level::zero, model));
  }
  return result;
}

namespace {

double depletion_rate(const Trajectory& traj, const LevelModel& model) {
  std::vector<double> ts, lnp;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double p0 = traj.population_at(i, Level::zero, model);
    if (p0 < 1e-12) continue;
    ts.push_back(traj.times[i]);
    lnp.push_back(std::log(p0));
  }
  if (ts.size() < 2) return 0.0;
  const LineFit fit = linear_regression(ts, lnp);
  return std::max(0.0, -fit.slope);
}

double absorption_point(const SystemParams& base, double delta_p, double t_ex,
                        const AbsorptionOptions& opt) {
  SystemParams p = base;
  p.delta_p = delta_p;
  const LevelModel model = build_model(p, 4);
  PulseSequence seq;
  seq.segments.push_back({Channel::pump, 0.0, t_ex, Shape::flat, p.omega_p, 0.0});
  if (p.omega_s > 0.0)
    seq.segments.push_back({Channel::stokes, 0.0, t_ex, Shape::flat, p.omega_s, p.phi});
  seq.total_duration = t_ex;
  const DensityMatrix rho0 = DensityMatrix::pure_level(4, model.index_of(Level::zero));
  const Trajectory traj = evolve(model, seq, rho0, opt.dt, opt.sample_stride);
  const double rate = depletion_rate(traj, model);
  return 1.0 - std::exp(-rate * t_ex);
}

}  // namespace

ExperimentResult run_absorption_scan(const SystemParams& p,
                                     const std::vector<double>& delta_ps,
                                     double t_ex, const AbsorptionOptions& opt) {
  if (delta_ps.empty())
    throw std::invalid_argument("run_absorption_scan: empty detuning list");
  if (!(t_ex > 0.0)) throw std::invalid_argument("run_absorption_scan: t_ex must be > 0");
  ExperimentResult result;
  result.x_name = "delta_p_MHz";
  result.x.reserve(delta_ps.size());
  result.p.reserve(delta_ps.size());
  for (double dp : delta_ps) {
    result.x.push_back(dp / (2.0 * M_PI));
    result.p.push_back(absorption_point(p, dp, t_ex, opt));
  }
  return result;
}

bool absorption_pump_too_strong(const SystemParams& p) {
  return p.gamma_e > 0.0 && p.omega_p >= p.gamma_e / 5.0;
}

CrossingMap run_avoided_crossing(const SystemParams& p,
                                 const std::vector<double>& delta_p_grid,
                                 const std::vector<double>& delta_s_grid,
                                 double t_ex, const AbsorptionOptions& opt) {
  if (delta_p_grid.empty() || delta_s_grid.empty())
    throw std::invalid_argument("run_avoided_crossing: empty grid");
  CrossingMap map;
  for (double dp : delta_p_grid) map.delta_p_mhz.push_back(dp / (2.0 * M_PI));
  for (double ds : delta_s_grid) map.delta_s_mhz.push_back(ds / (2.0 * M_PI));
  map.prob.reserve(delta_s_grid.size());
  for (double ds : delta_s_grid) {
    SystemParams ps = p;
    ps.delta_s = ds;
    std::vector<double> row;
    row.reserve(delta_p_grid.size());
    for (double dp : delta_p_grid) row.push_back(absorption_point(ps, dp, t_ex, opt));
    map.prob.push_back(std::move(row));
  }
  return map;
}

ExperimentResult add_projection_noise(const ExperimentResult& result,
                                      long long shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("add_projection_noise: shots must be >= 1");
  ExperimentResult out = result;
  out.shots = shots;
  out.seed = seed;
  out.counts.resize(out.p.size());
  for (size_t k = 0; k < out.p.size(); ++k)
    out.counts[k] = rng::binomial(shots, out.p[k], seed, k);
  return out;
}

FringeFit fit_fringe(const std::vector<double>& phi_rad,
                     const std::vector<double>& p0) {
  if (phi_rad.size() != p0.size() || phi_rad.size() < 3)
    throw std::invalid_argument("fit_fringe: need >= 3 matched points");
  // P = c + a cos(phi) + b sin(phi), solved by 3x3 normal equations.
  double m[9] = {0}, v[3] = {0};
  for (size_t k = 0; k < phi_rad.size(); ++k) {
    const double basis[3] = {1.0, std::cos(phi_rad[k]), std::sin(phi_rad[k])};
    for (int i = 0; i < 3; ++i) {
      v[i] += basis[i] * p0[k];
      for (int j = 0; j < 3; ++j) m[i * 3 + j] += basis[i] * basis[j];
    }
  }
  const std::vector<double> sol =
      solve_linear(std::vector<double>(m, m + 9), std::vector<double>(v, v + 3));
  FringeFit fit;
  fit.center = sol[0];
  const double a = sol[1], b = sol[2];
  fit.contrast = 2.0 * std::hypot(a, b);
  fit.phi_dyn = std::atan2(b, -a);
  return fit;
}

}  // namespace rydsim
