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

#ifndef RYDSIM_INFERENCE_HPP
#define RYDSIM_INFERENCE_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rydsim/experiments.hpp"

namespace rydsim {

enum class FitKind {
  exp_decay,  // P(t) = A exp(-t/tau) + C, C fixed
  fringe,     // P(phi) = c - (C/2) cos(phi + phi_dyn)
};

/// Parametric measurement model with flat-prior box bounds.
/// exp_decay parameters: (A, tau); fringe parameters: (c, C, phi_dyn).
struct FitModel {
  FitKind kind = FitKind::exp_decay;
  std::vector<std::pair<double, double>> bounds;
  double exp_floor = 0.0;  // the fixed offset C of exp_decay

  static FitModel lifetime();  // A in [0,1], tau in [0.05, 50] us
  static FitModel fringe();    // c in [0,1], C in [0,1], phi_dyn in [-pi, pi]

  int n_params() const { return kind == FitKind::exp_decay ? 2 : 3; }
  double eval(const std::vector<double>& params, double x) const;
  bool in_bounds(const std::vector<double>& params) const;
};

/// Binomial log posterior with flat priors: sum_k n_k ln p_k +
/// (N - n_k) ln(1 - p_k), model probabilities clipped to
/// [1e-9, 1 - 1e-9]; -inf outside the bounds box.
double log_posterior(const FitModel& model, const std::vector<double>& params,
                     const ExperimentResult& data);

struct Chain {
  int walkers = 0;
  int steps = 0;
  int n_params = 0;
  std::vector<double> samples;  // [step][walker][param]
  double acceptance_fraction = 0.0;

  double at(int step, int walker, int param) const {
    return samples[(static_cast<size_t>(step) * walkers + walker) * n_params + param];
  }
};

using LogDensity = std::function<double(const std::vector<double>&)>;

/// Affine-invariant ensemble sampler (stretch move, scale a = 2) over a
/// box support. Walkers start uniform in the box; the two-half-ensemble
/// update with counter-keyed randomness makes chains independent of
/// evaluation order and reproducible by seed. Burn-in is not removed.
Chain sample_ensemble(const LogDensity& log_prob,
                      const std::vector<std::pair<double, double>>& bounds,
                      int walkers, int steps, std::uint64_t seed,
                      double stretch_scale = 2.0);

/// Posterior sampling for a fit model on counted data.
Chain sample_posterior(const FitModel& model, const ExperimentResult& data,
                       int walkers, int steps, std::uint64_t seed);

struct Percentiles {
  double p16 = 0.0;
  double p50 = 0.0;
  double p84 = 0.0;
};

/// Per-parameter percentiles over the flattened post-burn-in samples.
std::vector<Percentiles> summarize(const Chain& chain, int burn_in);

}  // namespace rydsim

#endif
