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

#ifndef RYDSIM_PULSES_HPP
#define RYDSIM_PULSES_HPP

#include <string>
#include <vector>

#include "rydsim/hamiltonian.hpp"

namespace rydsim {

enum class Channel { pump, stokes, qubit };
enum class Shape { sin_rise, sin_fall, flat, off };

/// One piece of a channel's drive program.
///
/// Pump/Stokes segments are finite envelopes (t_end > t_start) whose
/// amplitude follows `shape` between 0 and `peak` (rad/us); `phase` is the
/// optical phase of the drive.
///
/// Qubit-channel entries are instantaneous rotations on the 674 nm
/// |1> <-> |0> transition: t_end == t_start, `peak` holds the rotation
/// angle in rad and `phase` the rotation axis azimuth. They take zero time
/// in the master equation.
struct EnvelopeSegment {
  Channel channel = Channel::pump;
  double t_start = 0.0;
  double t_end = 0.0;
  Shape shape = Shape::flat;
  double peak = 0.0;
  double phase = 0.0;
};

struct Drive {
  double amplitude = 0.0;  // rad/us
  double phase = 0.0;      // rad
};

/// An ordered, per-channel non-overlapping pulse program.
struct PulseSequence {
  std::vector<EnvelopeSegment> segments;
  double total_duration = 0.0;

  /// Throws std::invalid_argument on overlapping / out-of-order segments,
  /// negative peaks, or total_duration < max t_end.
  void validate() const;
};

/// Instantaneous amplitude and phase of one channel. Gaps read as off.
/// Throws when t is outside [0, total_duration] or channel is qubit
/// (qubit entries are rotations, not envelopes).
Drive envelope_at(const PulseSequence& seq, Channel channel, double t);

struct QubitKick {
  double t = 0.0;
  double angle = 0.0;  // rad
  double phase = 0.0;  // rotation axis azimuth, rad
};

/// Qubit rotations of the sequence in application order (time, then
/// position in the segment list for ties).
std::vector<QubitKick> qubit_kicks(const PulseSequence& seq);

/// Counterintuitive transfer |0> -> -|r>: Stokes rises over t_rise, then
/// pump rises as Stokes falls, then pump falls. Four ramps, 3*t_rise long.
PulseSequence single_stirap(const SystemParams& p, double t_rise);

/// Transfer and return |0> -> -|r> -> e^{i phi}|0>. The Stokes phase of
/// the return half is advanced by phi. For wait > 0 the pump ramps off,
/// idles for `wait` with both fields off, and ramps back on (8 ramps);
/// at wait = 0 the return crossing follows the transfer crossing
/// immediately, without the redundant pump off/on pair.
PulseSequence double_stirap(const SystemParams& p, double t_rise, double wait,
                            double phi);

/// Nest `inner` between two qubit rotations of the given angle and phases.
PulseSequence ramsey_wrap(const PulseSequence& inner, double pulse_angle,
                          double pulse_phase_1, double pulse_phase_2);

/// JSON serialization for audit and replay.
std::string sequence_to_json(const PulseSequence& seq);
PulseSequence sequence_from_json(const std::string& text);

}  // namespace rydsim

#endif
