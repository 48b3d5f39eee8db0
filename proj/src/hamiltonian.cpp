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

#include "rydsim/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace rydsim {

namespace {

void check_branching(double sum, const char* source) {
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument(std::string("SystemParams: branching fractions of ") +
                                source + " must sum to 1");
}

}  // namespace

void SystemParams::validate() const {
  if (omega_p < 0.0 || omega_s < 0.0)
    throw std::invalid_argument("SystemParams: Rabi frequencies must be >= 0");
  if (gamma_e < 0.0 || gamma_laser_p < 0.0 || gamma_laser_s < 0.0)
    throw std::invalid_argument("SystemParams: rates must be >= 0");
  if (!(tau_r > 0.0))
    throw std::invalid_argument("SystemParams: tau_r must be > 0");
  for (double b : {branch_e_to_s_minus, branch_e_to_s_plus, branch_r_to_s_minus,
                   branch_r_to_s_plus, branch_r_to_d})
    if (b < 0.0 || b > 1.0)
      throw std::invalid_argument("SystemParams: branching fractions must be in [0,1]");
  check_branching(branch_e_to_s_minus + branch_e_to_s_plus, "|e>");
  check_branching(branch_r_to_s_minus + branch_r_to_s_plus + branch_r_to_d, "|r>");
}

LadderHamiltonian build_hamiltonian(const SystemParams& p) {
  p.validate();
  ComplexMatrix h(3);
  const cplx stokes = 0.5 * p.omega_s * std::exp(cplx{0.0, p.phi});
  h(0, 1) = 0.5 * p.omega_p;
  h(1, 0) = 0.5 * p.omega_p;
  h(1, 1) = p.delta_p;
  h(1, 2) = stokes;
  h(2, 1) = std::conj(stokes);
  h(2, 2) = p.delta_p + p.delta_s;
  return LadderHamiltonian{h};
}

Ket dark_state(const SystemParams& p) {
  p.validate();
  const double norm2 = p.omega_p * p.omega_p + p.omega_s * p.omega_s;
  if (norm2 <= 0.0)
    throw std::invalid_argument("dark_state: both Rabi frequencies are zero");
  const double scale = std::max({1.0, std::abs(p.delta_p), std::abs(p.delta_s)});
  if (std::abs(p.delta_p + p.delta_s) > 1e-9 * scale)
    throw std::invalid_argument("dark_state: requires two-photon resonance delta_p = -delta_s");
  const double n = std::sqrt(norm2);
  Ket k(3);
  k.amp[0] = (p.omega_s / n) * std::exp(cplx{0.0, p.phi});
  k.amp[1] = 0.0;  // exactly dark
  k.amp[2] = -p.omega_p / n;
  return k;
}

std::pair<double, double> resonance_positions(double delta_s, double omega_s) {
  if (omega_s < 0.0)
    throw std::invalid_argument("resonance_positions: omega_s must be >= 0");
  const double root = std::sqrt(delta_s * delta_s + omega_s * omega_s);
  const double lo = 0.5 * (-delta_s - root);
  const double hi = 0.5 * (-delta_s + root);
  return {lo, hi};
}

}  // namespace rydsim
