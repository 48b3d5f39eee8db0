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

#ifndef RYDSIM_EXPERIMENTS_HPP
#define RYDSIM_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rydsim/lindblad.hpp"

namespace rydsim {

/// One scan's worth of measurement-ready observables. `x` is stored in
/// the unit named by `x_name` (phi_rad, wait_us, delta_p_MHz, ...).
/// `counts` is filled by add_projection_noise and is empty for noiseless
/// model curves.
struct ExperimentResult {
  std::string x_name;
  std::vector<double> x;
  std::vector<double> p;
  long long shots = 0;
  std::vector<long long> counts;
  std::uint64_t seed = 0;
};

struct ScanOptions {
  double dt = kDefaultDt;
  int sample_stride = 20;
};

struct StirapRun {
  double efficiency = 0.0;  // P_r when the transfer crossing completes
  double p_r_final = 0.0;   // P_r after the trailing pump ramp-down
  Trajectory trajectory;
};

/// Single STIRAP from |0> on the five-level model. The reported transfer
/// efficiency is the |r> population at the end of the counterintuitive
/// crossing (t = 2*t_rise), the point at which the dark state reaches the
/// |r> pole; decay during the transfer is included.
StirapRun run_single_stirap_full(const SystemParams& p, double t_rise,
                                 const ScanOptions& opt = {});
double run_single_stirap(const SystemParams& p, double t_rise,
                         const ScanOptions& opt = {});

struct DoubleStirapRun {
  double p0 = 0.0;  // population returned to |0>
  Trajectory trajectory;
};

DoubleStirapRun run_double_stirap_full(const SystemParams& p, double t_rise,
                                       double wait, double phi,
                                       const ScanOptions& opt = {});
double run_double_stirap(const SystemParams& p, double t_rise, double wait,
                         double phi, const ScanOptions& opt = {});

struct PhaseScanOptions {
  double t_rise = 0.2;
  double wait = 0.0;
  double dt = kDefaultDt;
  int sample_stride = 50;
  double ramsey_angle = M_PI / 2.0;
  double ramsey_error = 0.0;  // rad added to each Ramsey rotation
};

/// Ramsey-wrapped double STIRAP versus the Stokes phase step phi:
/// P_0(phi) from the five-level model, starting in |0>.
ExperimentResult run_phase_scan(const SystemParams& p,
                                const std::vector<double>& phis,
                                const PhaseScanOptions& opt = {});

struct AbsorptionOptions {
  double dt = 0.0025;
  int sample_stride = 10;
};

/// Pump-probe excitation spectrum on the four-level model. For each
/// pump detuning the |0> depletion rate R is fitted from ln P_0(t) over
/// the excitation window and reported as probability 1 - exp(-R t_ex).
/// x is stored in MHz (angular frequency / 2 pi).
ExperimentResult run_absorption_scan(const SystemParams& p,
                                     const std::vector<double>& delta_ps,
                                     double t_ex,
                                     const AbsorptionOptions& opt = {});

/// True when the probe no longer satisfies the weak-pump assumption of
/// the absorption model (omega_p >= gamma_e / 5).
bool absorption_pump_too_strong(const SystemParams& p);

struct CrossingMap {
  std::vector<double> delta_p_mhz;
  std::vector<double> delta_s_mhz;
  std::vector<std::vector<double>> prob;  // [i_delta_s][i_delta_p]
};

CrossingMap run_avoided_crossing(const SystemParams& p,
                                 const std::vector<double>& delta_p_grid,
                                 const std::vector<double>& delta_s_grid,
                                 double t_ex, const AbsorptionOptions& opt = {});

/// Binomial projection noise, one counter-mode stream per point: counts
/// depend only on (seed, point index), not on evaluation order.
ExperimentResult add_projection_noise(const ExperimentResult& result,
                                      long long shots, std::uint64_t seed);

struct FringeFit {
  double center = 0.0;
  double contrast = 0.0;
  double phi_dyn = 0.0;  // rad, model c - (C/2) cos(phi + phi_dyn)
};

/// Least-squares fringe fit via the (1, cos, sin) linear basis.
FringeFit fit_fringe(const std::vector<double>& phi_rad,
                     const std::vector<double>& p0);

}  // namespace rydsim

#endif
