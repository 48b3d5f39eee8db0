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

#include "rydsim/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace rydsim {

namespace {

const char* channel_name(Channel c) {
  switch (c) {
    case Channel::pump: return "pump";
    case Channel::stokes: return "stokes";
    case Channel::qubit: return "qubit";
  }
  return "?";
}

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::sin_rise: return "sin_rise";
    case Shape::sin_fall: return "sin_fall";
    case Shape::flat: return "flat";
    case Shape::off: return "off";
  }
  return "?";
}

Channel channel_from_name(const std::string& n) {
  if (n == "pump") return Channel::pump;
  if (n == "stokes") return Channel::stokes;
  if (n == "qubit") return Channel::qubit;
  throw std::invalid_argument("unknown channel name: " + n);
}

Shape shape_from_name(const std::string& n) {
  if (n == "sin_rise") return Shape::sin_rise;
  if (n == "sin_fall") return Shape::sin_fall;
  if (n == "flat") return Shape::flat;
  if (n == "off") return Shape::off;
  throw std::invalid_argument("unknown shape name: " + n);
}

}  // namespace

void PulseSequence::validate() const {
  double max_end = 0.0;
  std::map<Channel, std::vector<const EnvelopeSegment*>> per_channel;
  for (const EnvelopeSegment& s : segments) {
    if (s.peak < 0.0)
      throw std::invalid_argument("PulseSequence: segment peak must be >= 0");
    if (s.channel == Channel::qubit) {
      if (s.t_end != s.t_start)
        throw std::invalid_argument(
            "PulseSequence: qubit rotations are instantaneous (t_end == t_start)");
    } else if (!(s.t_end > s.t_start)) {
      throw std::invalid_argument("PulseSequence: segment needs t_end > t_start");
    }
    max_end = std::max(max_end, s.t_end);
    per_channel[s.channel].push_back(&s);
  }
  if (total_duration + 1e-12 < max_end)
    throw std::invalid_argument("PulseSequence: total_duration < last segment end");
  for (auto& [ch, segs] : per_channel) {
    if (ch == Channel::qubit) continue;
    std::vector<const EnvelopeSegment*> sorted = segs;
    std::sort(sorted.begin(), sorted.end(),
              [](const EnvelopeSegment* a, const EnvelopeSegment* b) {
                return a->t_start < b->t_start;
              });
    for (size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i]->t_start < sorted[i - 1]->t_end - 1e-12)
        throw std::invalid_argument(std::string("PulseSequence: overlapping segments on ") +
                                    channel_name(ch));
  }
}

Drive envelope_at(const PulseSequence& seq, Channel channel, double t) {
  if (channel == Channel::qubit)
    throw std::invalid_argument("envelope_at: qubit entries are rotations, not envelopes");
  if (t < 0.0 || t > seq.total_duration)
    throw std::invalid_argument("envelope_at: t outside [0, total_duration]");
  for (const EnvelopeSegment& s : seq.segments) {
    if (s.channel != channel) continue;
    if (t < s.t_start || t > s.t_end) continue;
    switch (s.shape) {
      case Shape::off:
        return {0.0, s.phase};
      case Shape::flat:
        return {s.peak, s.phase};
      case Shape::sin_rise: {
        const double x = (t - s.t_start) / (s.t_end - s.t_start);
        const double v = std::sin(0.5 * M_PI * x);
        return {s.peak * v * v, s.phase};
      }
      case Shape::sin_fall: {
        const double x = (s.t_end - t) / (s.t_end - s.t_start);
        const double v = std::sin(0.5 * M_PI * x);
        return {s.peak * v * v, s.phase};
      }
    }
  }
  return {0.0, 0.0};
}

std::vector<QubitKick> qubit_kicks(const PulseSequence& seq) {
  std::vector<QubitKick> kicks;
  for (const EnvelopeSegment& s : seq.segments)
    if (s.channel == Channel::qubit) kicks.push_back({s.t_start, s.peak, s.phase});
  std::stable_sort(kicks.begin(), kicks.end(),
                   [](const QubitKick& a, const QubitKick& b) { return a.t < b.t; });
  return kicks;
}

PulseSequence single_stirap(const SystemParams& p, double t_rise) {
  if (!(t_rise > 0.0)) throw std::invalid_argument("single_stirap: t_rise must be > 0");
  p.validate();
  const double tr = t_rise;
  PulseSequence seq;
  seq.segments = {
      {Channel::stokes, 0.0, tr, Shape::sin_rise, p.omega_s, p.phi},
      {Channel::stokes, tr, 2 * tr, Shape::sin_fall, p.omega_s, p.phi},
      {Channel::pump, tr, 2 * tr, Shape::sin_rise, p.omega_p, 0.0},
      {Channel::pump, 2 * tr, 3 * tr, Shape::sin_fall, p.omega_p, 0.0},
  };
  seq.total_duration = 3 * tr;
  seq.validate();
  return seq;
}

PulseSequence double_stirap(const SystemParams& p, double t_rise, double wait,
                            double phi) {
  if (!(t_rise > 0.0)) throw std::invalid_argument("double_stirap: t_rise must be > 0");
  if (wait < 0.0) throw std::invalid_argument("double_stirap: wait must be >= 0");
  p.validate();
  const double tr = t_rise;
  const double phi2 = p.phi + phi;
  PulseSequence seq;
  seq.segments = {
      {Channel::stokes, 0.0, tr, Shape::sin_rise, p.omega_s, p.phi},
      {Channel::stokes, tr, 2 * tr, Shape::sin_fall, p.omega_s, p.phi},
      {Channel::pump, tr, 2 * tr, Shape::sin_rise, p.omega_p, 0.0},
  };
  // Time at which the return crossing starts. Population sits in |r| for
  // the whole pump-off/pump-on detour, so it is emitted only when a wait
  // is actually requested.
  double t0 = 2 * tr;
  if (wait > 0.0) {
    seq.segments.push_back({Channel::pump, 2 * tr, 3 * tr, Shape::sin_fall, p.omega_p, 0.0});
    seq.segments.push_back(
        {Channel::pump, 3 * tr + wait, 4 * tr + wait, Shape::sin_rise, p.omega_p, 0.0});
    t0 = 4 * tr + wait;
  }
  seq.segments.push_back({Channel::pump, t0, t0 + tr, Shape::sin_fall, p.omega_p, 0.0});
  seq.segments.push_back({Channel::stokes, t0, t0 + tr, Shape::sin_rise, p.omega_s, phi2});
  seq.segments.push_back(
      {Channel::stokes, t0 + tr, t0 + 2 * tr, Shape::sin_fall, p.omega_s, phi2});
  seq.total_duration = t0 + 2 * tr;
  seq.validate();
  return seq;
}

PulseSequence ramsey_wrap(const PulseSequence& inner, double pulse_angle,
                          double pulse_phase_1, double pulse_phase_2) {
  if (!(pulse_angle > 0.0) || pulse_angle > M_PI + 1e-12)
    throw std::invalid_argument("ramsey_wrap: pulse_angle must be in (0, pi]");
  inner.validate();
  PulseSequence seq;
  const double t_end = inner.total_duration;
  seq.segments.push_back({Channel::qubit, 0.0, 0.0, Shape::flat, pulse_angle, pulse_phase_1});
  seq.segments.insert(seq.segments.end(), inner.segments.begin(), inner.segments.end());
  seq.segments.push_back(
      {Channel::qubit, t_end, t_end, Shape::flat, pulse_angle, pulse_phase_2});
  seq.total_duration = t_end;
  seq.validate();
  return seq;
}

std::string sequence_to_json(const PulseSequence& seq) {
  nlohmann::json j;
  j["total_duration_us"] = seq.total_duration;
  j["segments"] = nlohmann::json::array();
  for (const EnvelopeSegment& s : seq.segments) {
    j["segments"].push_back({{"channel", channel_name(s.channel)},
                             {"t_start_us", s.t_start},
                             {"t_end_us", s.t_end},
                             {"shape", shape_name(s.shape)},
                             {"peak", s.peak},
                             {"phase_rad", s.phase}});
  }
  return j.dump(2);
}

PulseSequence sequence_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  PulseSequence seq;
  seq.total_duration = j.at("total_duration_us").get<double>();
  for (const auto& js : j.at("segments")) {
    EnvelopeSegment s;
    s.channel = channel_from_name(js.at("channel").get<std::string>());
    s.t_start = js.at("t_start_us").get<double>();
    s.t_end = js.at("t_end_us").get<double>();
    s.shape = shape_from_name(js.at("shape").get<std::string>());
    s.peak = js.at("peak").get<double>();
    s.phase = js.at("phase_rad").get<double>();
    seq.segments.push_back(s);
  }
  seq.validate();
  return seq;
}

}  // namespace rydsim
