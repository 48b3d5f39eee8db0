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

#ifndef RYDSIM_TOMOGRAPHY_HPP
#define RYDSIM_TOMOGRAPHY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rydsim/lindblad.hpp"

namespace rydsim {

/// Counted single-qubit tomography data: 4 input preparations
/// {|0>, |1>, |+>, |+i>} x 3 measurement bases {X, Y, Z}, two outcomes
/// each. counts_plus[input * 3 + basis] holds the +1-eigenstate counts,
/// the -1 counts are shots - counts_plus.
struct TomographyDataset {
  long long shots = 0;
  std::array<long long, 12> counts_plus{};
  std::uint64_t seed = 0;

  double frequency(int setting) const {
    return static_cast<double>(counts_plus[static_cast<size_t>(setting)]) /
           static_cast<double>(shots);
  }
};

/// chi matrix of a qubit channel in the {I, X, Y, Z} operator basis:
/// E(rho) = sum_mn chi_mn sigma_m rho sigma_n.
struct ProcessMatrix {
  ComplexMatrix chi;  // dim 4

  static constexpr double kHermitianTol = 1e-9;
  static constexpr double kEigenFloor = -1e-9;
  static constexpr double kTraceTol = 1e-6;  // on the TP defect

  /// Hermiticity, positivity and trace preservation; throws on violation.
  void validate() const;
  /// Frobenius norm of sum_mn chi_mn sigma_n sigma_m - I.
  double tp_defect() const;
};

/// Rank-1 process of a 2x2 unitary.
ProcessMatrix process_from_unitary(const ComplexMatrix& u);
/// The ideal sigma_z pi-rotation target of the phi = pi phase gate.
ProcessMatrix ideal_sigma_z_process();

/// Apply the channel to a qubit density matrix.
ComplexMatrix apply_process(const ProcessMatrix& chi, const ComplexMatrix& rho);

/// Model probabilities of the 12 settings for a given channel.
std::array<double, 12> setting_probabilities(const ProcessMatrix& chi);

/// Exact-statistics dataset (counts = round(p * shots)) for oracle tests
/// and consistency checks.
TomographyDataset dataset_from_channel(const ProcessMatrix& chi, long long shots);

struct TomographyOptions {
  double phi = M_PI;          // Stokes phase step of the characterized gate
  double t_rise = 0.2;        // us
  double dt = kDefaultDt;     // us
  int sample_stride = 50;
  double ramsey_error = 0.0;  // rad added to each preparation/analysis rotation
};

/// Full simulated pipeline: for every input/basis the five-level model is
/// driven through preparation rotation, double STIRAP (phi), and analysis
/// rotation; outcome + is population detected in |0>. Counts are binomial
/// with one counter stream per setting.
TomographyDataset simulate_tomography(const SystemParams& p, long long shots,
                                      std::uint64_t seed,
                                      const TomographyOptions& opt = {});

/// Maximum-likelihood channel estimate over physical (CPTP) processes.
///
/// chi = T^2 / tr(T^2) with T Hermitian, fitted by simplex descent from
/// the linear-inversion start; trace preservation enters as a penalty of
/// weight 1e3 during the descent and is afterwards enforced exactly by
/// alternating projection onto the CPTP set. Deterministic for fixed data.
ProcessMatrix reconstruct_process(const TomographyDataset& data);

/// F = Re tr(chi_ideal chi), the standard overlap with a rank-1 target.
double process_fidelity(const ProcessMatrix& chi, const ProcessMatrix& ideal);

struct BootstrapResult {
  double p16 = 0.0;
  double p50 = 0.0;
  double p84 = 0.0;
};

/// Multinomial resampling of the counts, refit, fidelity percentiles
/// against `ideal`. Deterministic given seed; needs replicates >= 100.
BootstrapResult bootstrap_errors(const TomographyDataset& data, int replicates,
                                 std::uint64_t seed, const ProcessMatrix& ideal);

/// Output Bloch vectors of a spherical grid of pure states pushed through
/// the channel (golden-spiral sampling).
std::vector<std::array<double, 3>> bloch_image(const ProcessMatrix& chi,
                                               int sphere_samples);

std::string dataset_to_json(const TomographyDataset& data);
TomographyDataset dataset_from_json(const std::string& text);
std::string process_to_json(const ProcessMatrix& chi);
ProcessMatrix process_from_json(const std::string& text);

}  // namespace rydsim

#endif
