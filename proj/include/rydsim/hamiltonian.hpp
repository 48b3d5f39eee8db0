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

#ifndef RYDSIM_HAMILTONIAN_HPP
#define RYDSIM_HAMILTONIAN_HPP

#include <utility>

#include "rydsim/quantum_core.hpp"

namespace rydsim {

/// Physical parameters of the driven ladder system.
///
/// Unit conventions: angular frequencies in rad/us (a drive quoted as
/// "f MHz" enters as 2*pi*f), times in us, phases in rad, hbar = 1.
/// Detunings are positive for red-detuned lasers.
struct SystemParams {
  double omega_p = 0.0;  ///< pump Rabi frequency (|0> <-> |e>)
  double omega_s = 0.0;  ///< Stokes Rabi frequency (|e> <-> |r>)
  double delta_p = 0.0;  ///< pump detuning
  double delta_s = 0.0;  ///< Stokes detuning
  double phi = 0.0;      ///< Stokes phase

  double gamma_e = 0.0;  ///< |e> linewidth (total decay rate)
  double tau_r = 1e30;   ///< Rydberg |r> lifetime in us (large = stable)
  double gamma_laser_p = 0.0;  ///< pump laser linewidth
  double gamma_laser_s = 0.0;  ///< Stokes laser linewidth

  // Branching fractions; each source must sum to 1.
  double branch_e_to_s_minus = 0.5;  ///< |e> -> |1>  (5S, mJ=-1/2)
  double branch_e_to_s_plus = 0.5;   ///< |e> -> |S+> (5S, mJ=+1/2)
  double branch_r_to_s_minus = 0.5;
  double branch_r_to_s_plus = 0.5;
  double branch_r_to_d = 0.0;  ///< |r> -> |0> recycling fraction

  double stark_1 = 0.0;  ///< light shift on |1> while the Stokes field is on

  /// Throws std::invalid_argument when a rate is negative or a branching
  /// set does not sum to 1 within 1e-12.
  void validate() const;
};

/// 3x3 rotating-wave coupling Hamiltonian in the basis (|0>, |e>, |r>).
/// Entry (0,0) is zero by convention.
struct LadderHamiltonian {
  ComplexMatrix matrix;  // dim 3, units rad/us
};

LadderHamiltonian build_hamiltonian(const SystemParams& p);

/// The zero-coupling-to-|e> eigenstate at two-photon resonance,
/// (omega_s e^{i phi}, 0, -omega_p)/norm in the basis (|0>, |e>, |r>).
/// Throws if both Rabi frequencies vanish or delta_p != -delta_s.
Ket dark_state(const SystemParams& p);

/// The two pump detunings where the dressed |e>/|r> resonances sit:
/// delta_p = (-delta_s +- sqrt(delta_s^2 + omega_s^2)) / 2, ascending.
std::pair<double, double> resonance_positions(double delta_s, double omega_s);

}  // namespace rydsim

#endif
