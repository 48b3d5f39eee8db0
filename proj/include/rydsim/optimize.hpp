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

#ifndef RYDSIM_OPTIMIZE_HPP
#define RYDSIM_OPTIMIZE_HPP

#include <functional>
#include <vector>

namespace rydsim {

/// Solve the dense n x n system a x = b (a row-major, consumed) by
/// Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

LineFit linear_regression(const std::vector<double>& x, const std::vector<double>& y);

struct SimplexResult {
  std::vector<double> x;
  double fval = 0.0;
  int iterations = 0;
};

/// Deterministic Nelder-Mead descent from x0 with per-coordinate initial
/// step `step`. Stops when the simplex function spread drops below ftol
/// or after max_iter iterations.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> x0, double step, int max_iter = 10000,
                          double ftol = 1e-10);

/// Quantile with linear interpolation between order statistics; values are
/// copied and sorted internally.
double quantile(std::vector<double> values, double q);

}  // namespace rydsim

#endif
