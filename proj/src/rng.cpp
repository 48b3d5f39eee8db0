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

#include "rydsim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rydsim {
namespace rng {

double normal(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2,
              std::uint64_t k3) {
  // two sub-draws derived from the same key
  double u1 = uniform(seed, k1, k2, k3 * 2 + 1);
  double u2 = uniform(seed, k1, k2, k3 * 2 + 2);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

long long binomial(long long n, double p, std::uint64_t seed, std::uint64_t k1,
                   std::uint64_t k2) {
  if (n < 0) throw std::invalid_argument("binomial: n must be >= 0");
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  if (p == 0.0) return 0;
  if (p == 1.0) return n;
  constexpr long long kExactLimit = 100000;
  if (n <= kExactLimit) {
    long long count = 0;
    for (long long i = 0; i < n; ++i)
      if (uniform(seed, k1, k2, static_cast<std::uint64_t>(i) + 16) < p)
        ++count;
    return count;
  }
  double mean = static_cast<double>(n) * p;
  double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  double draw = std::round(mean + sd * normal(seed, k1, k2, 7));
  if (draw < 0.0) draw = 0.0;
  if (draw > static_cast<double>(n)) draw = static_cast<double>(n);
  return static_cast<long long>(draw);
}

}  // namespace rng
}  // namespace rydsim
