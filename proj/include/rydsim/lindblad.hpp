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

#ifndef RYDSIM_LINDBLAD_HPP
#define RYDSIM_LINDBLAD_HPP

#include <stdexcept>
#include <vector>

#include "rydsim/pulses.hpp"
#include "rydsim/quantum_core.hpp"

namespace rydsim {

/// Thrown when an integration or fit leaves its validity envelope
/// (trace drift, divergence). The CLI maps it to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical level ordering of the five-level model. Smaller models drop
/// levels from the front: dim 4 keeps (|S+>, |0>, |e>, |r>) with |S+>
/// standing in for the whole 5S ground manifold, dim 3 keeps
/// (|0>, |e>, |r>).
enum class Level : int {
  s_minus = 0,  // |1> = 5S1/2, mJ=-1/2 (qubit partner state)
  s_plus = 1,   // 5S1/2, mJ=+1/2
  zero = 2,     // |0> = 4D5/2, mJ=-5/2
  e = 3,        // 6P3/2, mJ=-3/2
  r = 4,        // 42S1/2, mJ=-1/2
};

const char* level_label(Level l);

struct CollapseOp {
  ComplexMatrix op;
  double rate = 0.0;    // rate carried by op = sqrt(rate) * structure
  bool refills = true;  // false: population leaves the modeled space
};

struct LevelModel {
  int dim = 5;
  SystemParams params;
  std::vector<CollapseOp> collapse_ops;
  bool trace_preserving = true;

  /// Local index of a canonical level, or -1 when truncated away.
  int index_of(Level l) const {
    int idx = static_cast<int>(l) - (5 - dim);
    return idx >= 0 ? idx : -1;
  }
};

/// Assemble decay and dephasing channels for a 3-, 4- or 5-level model.
///
/// |e> decays at gamma_e and |r> at 1/tau_r, split over the ground states
/// by the branching fractions. Laser linewidths enter as white-noise
/// dephasing, sqrt(2*gamma_p) on the {|e>,|r>} projector and
/// sqrt(2*gamma_s) on |r>. The 3-level model has no ground sink, so its
/// ground-manifold decay is non-recycling loss and the trace decays; the
/// 4-level model is the recommended smallest trace-preserving choice.
LevelModel build_model(const SystemParams& p, int dim);

struct Trajectory {
  int dim = 0;
  std::vector<double> times;
  std::vector<ComplexMatrix> states;
  std::vector<std::vector<double>> populations;

  const ComplexMatrix& final_state() const { return states.back(); }
  double final_population(int level_index) const {
    return populations.back()[static_cast<size_t>(level_index)];
  }
  /// Population of a canonical level at sample i (0 if truncated away).
  double population_at(size_t i, Level l, const LevelModel& model) const;
};

inline constexpr double kDefaultDt = 1e-4;  // us

/// Integrate the master equation over the pulse sequence with classic
/// fixed-step RK4 on the vectorized density matrix. Steps are aligned to
/// segment boundaries and qubit rotations; the Hamiltonian is evaluated
/// from the envelopes at the substep midpoints. Samples are recorded
/// every `sample_stride` steps (and always at the start and end).
///
/// Throws std::invalid_argument when dt exceeds 1/50 of the shortest
/// ramp, and NumericalError when the trace drifts by more than 1e-6.
Trajectory evolve(const LevelModel& model, const PulseSequence& seq,
                  const DensityMatrix& rho0, double dt = kDefaultDt,
                  int sample_stride = 1);

}  // namespace rydsim

#endif
