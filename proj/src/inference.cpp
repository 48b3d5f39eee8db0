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

#include "rydsim/inference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rydsim/optimize.hpp"
#include "rydsim/rng.hpp"

namespace rydsim {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kProbClip = 1e-9;
}  // namespace

FitModel FitModel::lifetime() {
  FitModel m;
  m.kind = FitKind::exp_decay;
  m.bounds = {{0.0, 1.0}, {0.05, 50.0}};
  return m;
}

FitModel FitModel::fringe() {
  FitModel m;
  m.kind = FitKind::fringe;
  m.bounds = {{0.0, 1.0}, {0.0, 1.0}, {-M_PI, M_PI}};
  return m;
}

double FitModel::eval(const std::vector<double>& params, double x) const {
  if (kind == FitKind::exp_decay)
    return params[0] * std::exp(-x / params[1]) + exp_floor;
  return params[0] - 0.5 * params[1] * std::cos(x + params[2]);
}

bool FitModel::in_bounds(const std::vector<double>& params) const {
  if (params.size() != bounds.size()) return false;
  for (size_t i = 0; i < bounds.size(); ++i)
    if (params[i] < bounds[i].first || params[i] > bounds[i].second) return false;
  return true;
}

double log_posterior(const FitModel& model, const std::vector<double>& params,
                     const ExperimentResult& data) {
  if (static_cast<int>(model.bounds.size()) != model.n_params())
    throw std::invalid_argument("log_posterior: bounds do not match parameter count");
  if (data.counts.empty() || data.shots < 1)
    throw std::invalid_argument("log_posterior: data carries no counts");
  if (!model.in_bounds(params)) return kNegInf;
  double ll = 0.0;
  const double n_shots = static_cast<double>(data.shots);
  for (size_t k = 0; k < data.x.size(); ++k) {
    double p = model.eval(params, data.x[k]);
    p = std::min(1.0 - kProbClip, std::max(kProbClip, p));
    const double n = static_cast<double>(data.counts[k]);
    ll += n * std::log(p) + (n_shots - n) * std::log1p(-p);
  }
  return ll;
}

Chain sample_ensemble(const LogDensity& log_prob,
                      const std::vector<std::pair<double, double>>& bounds,
                      int walkers, int steps, std::uint64_t seed,
                      double stretch_scale) {
  const int n_params = static_cast<int>(bounds.size());
  if (n_params < 1) throw std::invalid_argument("sample_ensemble: no parameters");
  if (walkers < 2 * n_params)
    throw std::invalid_argument("sample_ensemble: need walkers >= 2 * n_params");
  if (steps < 1) throw std::invalid_argument("sample_ensemble: need steps >= 1");
  if (!(stretch_scale > 1.0))
    throw std::invalid_argument("sample_ensemble: stretch scale must exceed 1");
  for (const auto& [lo, hi] : bounds)
    if (!(lo < hi)) throw std::invalid_argument("sample_ensemble: empty bound interval");

  std::vector<std::vector<double>> pos(static_cast<size_t>(walkers),
                                       std::vector<double>(static_cast<size_t>(n_params)));
  std::vector<double> logp(static_cast<size_t>(walkers));
  for (int w = 0; w < walkers; ++w) {
    for (int j = 0; j < n_params; ++j) {
      const double u = rng::uniform(seed, 0, static_cast<std::uint64_t>(w),
                                    static_cast<std::uint64_t>(j));
      pos[w][j] = bounds[j].first + u * (bounds[j].second - bounds[j].first);
    }
    logp[w] = log_prob(pos[w]);
    if (!(logp[w] > kNegInf))
      throw std::invalid_argument("sample_ensemble: initialization outside prior support");
  }

  Chain chain;
  chain.walkers = walkers;
  chain.steps = steps;
  chain.n_params = n_params;
  chain.samples.resize(static_cast<size_t>(walkers) * steps * n_params);

  const int half = walkers / 2;
  long long accepted = 0;
  std::vector<double> proposal(static_cast<size_t>(n_params));
  const double a = stretch_scale;

  for (int s = 0; s < steps; ++s) {
    const std::uint64_t step_key = static_cast<std::uint64_t>(s) + 1;
    for (int block = 0; block < 2; ++block) {
      const int begin = block == 0 ? 0 : half;
      const int end = block == 0 ? half : walkers;
      const int other_begin = block == 0 ? half : 0;
      const int other_count = block == 0 ? walkers - half : half;
      for (int w = begin; w < end; ++w) {
        const std::uint64_t wk = static_cast<std::uint64_t>(w);
        const double u1 = rng::uniform(seed, step_key, wk, 0);
        const int partner =
            other_begin + std::min(other_count - 1, static_cast<int>(u1 * other_count));
        const double u2 = rng::uniform(seed, step_key, wk, 1);
        const double zr = (a - 1.0) * u2 + 1.0;
        const double z = zr * zr / a;
        for (int j = 0; j < n_params; ++j)
          proposal[j] = pos[partner][j] + z * (pos[w][j] - pos[partner][j]);
        const double lp = log_prob(proposal);
        const double log_q = (n_params - 1) * std::log(z) + lp - logp[w];
        const double u3 = rng::uniform(seed, step_key, wk, 2);
        if (lp > kNegInf && (u3 <= 0.0 || std::log(u3) < log_q)) {
          pos[w] = proposal;
          logp[w] = lp;
          ++accepted;
        }
      }
    }
    for (int w = 0; w < walkers; ++w)
      for (int j = 0; j < n_params; ++j)
        chain.samples[(static_cast<size_t>(s) * walkers + w) * n_params + j] = pos[w][j];
  }
  chain.acceptance_fraction =
      static_cast<double>(accepted) / (static_cast<double>(walkers) * steps);
  return chain;
}

Chain sample_posterior(const FitModel& model, const ExperimentResult& data,
                       int walkers, int steps, std::uint64_t seed) {
  return sample_ensemble(
      [&model, &data](const std::vector<double>& params) {
        return log_posterior(model, params, data);
      },
      model.bounds, walkers, steps, seed);
}

std::vector<Percentiles> summarize(const Chain& chain, int burn_in) {
  if (burn_in < 0 || burn_in >= chain.steps)
    throw std::invalid_argument("summarize: burn_in must be < steps");
  std::vector<Percentiles> out;
  out.reserve(static_cast<size_t>(chain.n_params));
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(chain.steps - burn_in) * chain.walkers);
  for (int j = 0; j < chain.n_params; ++j) {
    flat.clear();
    for (int s = burn_in; s < chain.steps; ++s)
      for (int w = 0; w < chain.walkers; ++w) flat.push_back(chain.at(s, w, j));
    Percentiles p;
    p.p16 = quantile(flat, 0.16);
    p.p50 = quantile(flat, 0.50);
    p.p84 = quantile(flat, 0.84);
    out.push_back(p);
  }
  return out;
}

}  // namespace rydsim
