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

#ifndef RYDSIM_RNG_HPP
#define RYDSIM_RNG_HPP

#include <cstdint>

namespace rydsim {

/// Counter-based random numbers.
///
/// Every draw is a pure function of (seed, k1, k2, k3), so scan points,
/// walkers and bootstrap replicates can be evaluated in any order (or in
/// parallel) and still produce identical streams. No state is carried.
namespace rng {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t k1,
                                 std::uint64_t k2 = 0, std::uint64_t k3 = 0) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ (k1 * 0xd1342543de82ef95ULL));
  h = mix64(h ^ (k2 * 0xaf251af3b0f025b5ULL));
  h = mix64(h ^ (k3 * 0x9e6c63d0a38871a5ULL));
  return h;
}

/// Uniform double in [0, 1).
inline double uniform(std::uint64_t seed, std::uint64_t k1,
                      std::uint64_t k2 = 0, std::uint64_t k3 = 0) {
  return static_cast<double>(counter_u64(seed, k1, k2, k3) >> 11) * 0x1.0p-53;
}

/// Standard normal via Box-Muller on two keyed uniforms.
double normal(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2 = 0,
              std::uint64_t k3 = 0);

/// Binomial(n, p) draw keyed by (seed, k1, k2). Exact Bernoulli sum for
/// small n, normal approximation for very large n (the only regime where
/// shot noise is negligible anyway).
long long binomial(long long n, double p, std::uint64_t seed, std::uint64_t k1,
                   std::uint64_t k2 = 0);

}  // namespace rng
}  // namespace rydsim

#endif
