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

#include "rydsim/lindblad.hpp"

#include <algorithm>
#include <cmath>

namespace rydsim {

const char* level_label(Level l) {
  switch (l) {
    case Level::s_minus: return "1";
    case Level::s_plus: return "S+";
    case Level::zero: return "0";
    case Level::e: return "e";
    case Level::r: return "r";
  }
  return "?";
}

double Trajectory::population_at(size_t i, Level l, const LevelModel& model) const {
  int idx = model.index_of(l);
  if (idx < 0) return 0.0;
  return populations[i][static_cast<size_t>(idx)];
}

namespace {

ComplexMatrix jump_op(int dim, int to, int from, double rate) {
  ComplexMatrix c(dim);
  c(to, from) = std::sqrt(rate);
  return c;
}

}  // namespace

LevelModel build_model(const SystemParams& p, int dim) {
  p.validate();
  if (dim < 3 || dim > 5)
    throw std::invalid_argument("build_model: dim must be 3, 4 or 5");

  LevelModel model;
  model.dim = dim;
  model.params = p;
  const double gamma_r = 1.0 / p.tau_r;

  const int i_zero = model.index_of(Level::zero);
  const int i_e = model.index_of(Level::e);
  const int i_r = model.index_of(Level::r);
  const int i_sm = model.index_of(Level::s_minus);
  const int i_sp = model.index_of(Level::s_plus);

  auto add_decay = [&](int from, int to, double rate) {
    if (rate <= 0.0) return;
    if (to >= 0) {
      model.collapse_ops.push_back({jump_op(dim, to, from, rate), rate, true});
    } else {
      // no state to receive the population: non-recycling loss
      model.collapse_ops.push_back({jump_op(dim, from, from, rate), rate, false});
      model.trace_preserving = false;
    }
  };

  if (dim == 5) {
    add_decay(i_e, i_sm, p.gamma_e * p.branch_e_to_s_minus);
    add_decay(i_e, i_sp, p.gamma_e * p.branch_e_to_s_plus);
    add_decay(i_r, i_sm, gamma_r * p.branch_r_to_s_minus);
    add_decay(i_r, i_sp, gamma_r * p.branch_r_to_s_plus);
    add_decay(i_r, i_zero, gamma_r * p.branch_r_to_d);
  } else if (dim == 4) {
    // |S+> is the merged 5S1/2 sink
    add_decay(i_e, i_sp, p.gamma_e);
    add_decay(i_r, i_sp, gamma_r * (p.branch_r_to_s_minus + p.branch_r_to_s_plus));
    add_decay(i_r, i_zero, gamma_r * p.branch_r_to_d);
  } else {
    add_decay(i_e, -1, p.gamma_e);
    add_decay(i_r, -1, gamma_r * (p.branch_r_to_s_minus + p.branch_r_to_s_plus));
    add_decay(i_r, i_zero, gamma_r * p.branch_r_to_d);
  }

  if (p.gamma_laser_p > 0.0) {
    ComplexMatrix c(dim);
    const double w = std::sqrt(2.0 * p.gamma_laser_p);
    c(i_e, i_e) = w;
    c(i_r, i_r) = w;
    model.collapse_ops.push_back({c, 2.0 * p.gamma_laser_p, true});
  }
  if (p.gamma_laser_s > 0.0) {
    ComplexMatrix c(dim);
    c(i_r, i_r) = std::sqrt(2.0 * p.gamma_laser_s);
    model.collapse_ops.push_back({c, 2.0 * p.gamma_laser_s, true});
  }
  return model;
}

namespace {

struct Jump {
  int to, from;
  double rate;
};

/// Structural view of the dissipator so the RK4 right-hand side runs in
/// O(d^2) for jump/dephasing channels (the only kinds build_model emits).
struct Dissipator {
  std::vector<double> k_diag;       // diagonal of sum C^dag C
  std::vector<Jump> jumps;          // refilling jumps
  ComplexMatrix diag_coeff;         // Hadamard coefficients from diagonal ops
  bool has_diag = false;
  std::vector<ComplexMatrix> general;  // fallback refill terms
  ComplexMatrix k_general;             // non-diagonal part of sum C^dag C
  bool k_is_diagonal = true;

  explicit Dissipator(const LevelModel& model) {
    const int d = model.dim;
    k_diag.assign(static_cast<size_t>(d), 0.0);
    diag_coeff = ComplexMatrix(d);
    for (const CollapseOp& c : model.collapse_ops) {
      int nonzeros = 0, row = -1, col = -1;
      bool diagonal_only = true;
      for (int rr = 0; rr < d; ++rr)
        for (int cc = 0; cc < d; ++cc)
          if (c.op(rr, cc) != cplx{0.0, 0.0}) {
            ++nonzeros;
            row = rr;
            col = cc;
            if (rr != cc) diagonal_only = false;
          }
      if (nonzeros == 0) continue;
      if (nonzeros == 1 && row != col) {  // jump w|row><col|
        const double rate = std::norm(c.op(row, col));
        k_diag[static_cast<size_t>(col)] += rate;
        if (c.refills) jumps.push_back({row, col, rate});
      } else if (diagonal_only) {
        for (int i = 0; i < d; ++i) k_diag[static_cast<size_t>(i)] += std::norm(c.op(i, i));
        if (c.refills) {
          has_diag = true;
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
              diag_coeff(i, j) += c.op(i, i) * std::conj(c.op(j, j));
        }
      } else {
        if (k_general.dim() == 0) k_general = ComplexMatrix(d);
        k_general += c.op.adjoint() * c.op;
        k_is_diagonal = false;
        if (c.refills) general.push_back(c.op);
      }
    }
  }
};

struct ActiveSegments {
  const EnvelopeSegment* pump = nullptr;
  const EnvelopeSegment* stokes = nullptr;
};

double segment_amplitude(const EnvelopeSegment& s, double t) {
  switch (s.shape) {
    case Shape::off: return 0.0;
    case Shape::flat: return s.peak;
    case Shape::sin_rise: {
      const double x = (t - s.t_start) / (s.t_end - s.t_start);
      const double v = std::sin(0.5 * M_PI * x);
      return s.peak * v * v;
    }
    case Shape::sin_fall: {
      const double x = (s.t_end - t) / (s.t_end - s.t_start);
      const double v = std::sin(0.5 * M_PI * x);
      return s.peak * v * v;
    }
  }
  return 0.0;
}

class Integrator {
 public:
  Integrator(const LevelModel& model, const PulseSequence& seq)
      : model_(model),
        dis_(model),
        d_(model.dim),
        i_sm_(model.index_of(Level::s_minus)),
        i_zero_(model.index_of(Level::zero)),
        i_e_(model.index_of(Level::e)),
        i_r_(model.index_of(Level::r)),
        seq_(seq) {
    h_.assign(static_cast<size_t>(d_) * d_, cplx{});
    for (auto* buf : {&k1_, &k2_, &k3_, &k4_, &y_}) buf->assign(h_.size(), cplx{});
  }

  void set_interval(double t_lo, double t_hi) {
    const double mid = 0.5 * (t_lo + t_hi);
    active_ = {};
    for (const EnvelopeSegment& s : seq_.segments) {
      if (s.channel == Channel::qubit) continue;
      if (s.t_start - 1e-12 <= mid && mid <= s.t_end + 1e-12) {
        if (s.channel == Channel::pump) active_.pump = &s;
        if (s.channel == Channel::stokes) active_.stokes = &s;
      }
    }
    stokes_on_ = active_.stokes != nullptr && active_.stokes->peak > 0.0 &&
                 active_.stokes->shape != Shape::off;
  }

  // rho' = -i[H(t), rho] + dissipator(rho), written into out.
  void rhs(double t, const std::vector<cplx>& rho, std::vector<cplx>& out) {
    build_h(t);
    const int d = d_;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        cplx s{0.0, 0.0};
        for (int k = 0; k < d; ++k)
          s += h_[static_cast<size_t>(r) * d + k] * rho[static_cast<size_t>(k) * d + c] -
               rho[static_cast<size_t>(r) * d + k] * h_[static_cast<size_t>(k) * d + c];
        out[static_cast<size_t>(r) * d + c] = cplx{s.imag(), -s.real()};  // -i*s
      }
    if (dis_.k_is_diagonal) {
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          out[static_cast<size_t>(r) * d + c] -=
              0.5 * (dis_.k_diag[static_cast<size_t>(r)] + dis_.k_diag[static_cast<size_t>(c)]) *
              rho[static_cast<size_t>(r) * d + c];
    } else {
      apply_k_general(rho, out);
    }
    if (dis_.has_diag) {
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          out[static_cast<size_t>(r) * d + c] +=
              dis_.diag_coeff(r, c) * rho[static_cast<size_t>(r) * d + c];
    }
    for (const Jump& j : dis_.jumps)
      out[static_cast<size_t>(j.to) * d + j.to] +=
          j.rate * rho[static_cast<size_t>(j.from) * d + j.from];
    for (const ComplexMatrix& c : dis_.general) apply_general(c, rho, out);
  }

  void rk4_step(double t, double h, std::vector<cplx>& rho) {
    rhs(t, rho, k1_);
    axpy(rho, 0.5 * h, k1_, y_);
    rhs(t + 0.5 * h, y_, k2_);
    axpy(rho, 0.5 * h, k2_, y_);
    rhs(t + 0.5 * h, y_, k3_);
    axpy(rho, h, k3_, y_);
    rhs(t + h, y_, k4_);
    const double w = h / 6.0;
    for (size_t i = 0; i < rho.size(); ++i)
      rho[i] += w * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
  }

 private:
  void build_h(double t) {
    std::fill(h_.begin(), h_.end(), cplx{});
    auto at = [&](int r, int c) -> cplx& { return h_[static_cast<size_t>(r) * d_ + c]; };
    const SystemParams& p = model_.params;
    if (i_e_ >= 0) at(i_e_, i_e_) = p.delta_p;
    if (i_r_ >= 0) at(i_r_, i_r_) = p.delta_p + p.delta_s;
    if (i_sm_ >= 0 && stokes_on_) at(i_sm_, i_sm_) = p.stark_1;
    if (active_.pump != nullptr && i_zero_ >= 0 && i_e_ >= 0) {
      const double amp = segment_amplitude(*active_.pump, t);
      const cplx v = 0.5 * amp * std::exp(cplx{0.0, active_.pump->phase});
      at(i_zero_, i_e_) = v;
      at(i_e_, i_zero_) = std::conj(v);
    }
    if (active_.stokes != nullptr && i_e_ >= 0 && i_r_ >= 0) {
      const double amp = segment_amplitude(*active_.stokes, t);
      const cplx v = 0.5 * amp * std::exp(cplx{0.0, active_.stokes->phase});
      at(i_e_, i_r_) = v;
      at(i_r_, i_e_) = std::conj(v);
    }
  }

  static void axpy(const std::vector<cplx>& x, double a, const std::vector<cplx>& k,
                   std::vector<cplx>& out) {
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * k[i];
  }

  void apply_k_general(const std::vector<cplx>& rho, std::vector<cplx>& out) {
    const int d = d_;
    std::vector<double> kd(static_cast<size_t>(d), 0.0);
    for (int i = 0; i < d; ++i) kd[static_cast<size_t>(i)] = dis_.k_diag[static_cast<size_t>(i)];
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        cplx s = 0.5 * (kd[static_cast<size_t>(r)] + kd[static_cast<size_t>(c)]) *
                 rho[static_cast<size_t>(r) * d + c];
        for (int k = 0; k < d; ++k)
          s += 0.5 * (dis_.k_general(r, k) * rho[static_cast<size_t>(k) * d + c] +
                      rho[static_cast<size_t>(r) * d + k] * dis_.k_general(k, c));
        out[static_cast<size_t>(r) * d + c] -= s;
      }
  }

  void apply_general(const ComplexMatrix& c, const std::vector<cplx>& rho,
                     std::vector<cplx>& out) {
    const int d = d_;
    for (int r = 0; r < d; ++r)
      for (int cc = 0; cc < d; ++cc) {
        cplx s{0.0, 0.0};
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            s += c(r, k) * rho[static_cast<size_t>(k) * d + l] * std::conj(c(cc, l));
        out[static_cast<size_t>(r) * d + cc] += s;
      }
  }

  const LevelModel& model_;
  Dissipator dis_;
  int d_;
  int i_sm_, i_zero_, i_e_, i_r_;
  const PulseSequence& seq_;
  ActiveSegments active_;
  bool stokes_on_ = false;
  std::vector<cplx> h_, k1_, k2_, k3_, k4_, y_;
};

void apply_kick(const LevelModel& model, const QubitKick& kick, std::vector<cplx>& rho) {
  const int i0 = model.index_of(Level::zero);
  const int i1 = model.index_of(Level::s_minus);
  if (i0 < 0 || i1 < 0)
    throw std::invalid_argument("evolve: qubit rotations need the five-level model");
  const int d = model.dim;
  ComplexMatrix u = ComplexMatrix::identity(d);
  const double c = std::cos(0.5 * kick.angle), s = std::sin(0.5 * kick.angle);
  u(i0, i0) = c;
  u(i0, i1) = cplx{0.0, -1.0} * std::exp(cplx{0.0, -kick.phase}) * s;
  u(i1, i0) = cplx{0.0, -1.0} * std::exp(cplx{0.0, kick.phase}) * s;
  u(i1, i1) = c;
  ComplexMatrix m(d);
  for (int r = 0; r < d; ++r)
    for (int cc = 0; cc < d; ++cc) m(r, cc) = rho[static_cast<size_t>(r) * d + cc];
  ComplexMatrix res = u * m * u.adjoint();
  for (int r = 0; r < d; ++r)
    for (int cc = 0; cc < d; ++cc) rho[static_cast<size_t>(r) * d + cc] = res(r, cc);
}

}  // namespace

Trajectory evolve(const LevelModel& model, const PulseSequence& seq,
                  const DensityMatrix& rho0, double dt, int sample_stride) {
  seq.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be > 0");
  if (sample_stride < 1) throw std::invalid_argument("evolve: sample_stride must be >= 1");
  if (rho0.dim() != model.dim)
    throw std::invalid_argument("evolve: initial state dimension mismatch");
  for (const EnvelopeSegment& s : seq.segments) {
    if (s.channel == Channel::qubit) continue;
    if (s.shape == Shape::sin_rise || s.shape == Shape::sin_fall) {
      const double ramp = s.t_end - s.t_start;
      if (dt > ramp / 50.0 + 1e-15)
        throw std::invalid_argument("evolve: step-size too large, need dt <= t_rise/50");
    }
  }

  std::vector<QubitKick> kicks = qubit_kicks(seq);

  std::vector<double> events = {0.0, seq.total_duration};
  for (const EnvelopeSegment& s : seq.segments) {
    if (s.channel == Channel::qubit) continue;
    events.push_back(s.t_start);
    events.push_back(s.t_end);
  }
  for (const QubitKick& k : kicks) events.push_back(k.t);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               events.end());

  const int d = model.dim;
  std::vector<cplx> rho(static_cast<size_t>(d) * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) rho[static_cast<size_t>(r) * d + c] = rho0.matrix()(r, c);

  Integrator integ(model, seq);

  Trajectory traj;
  traj.dim = d;
  auto apply_kicks_at = [&](double t) {
    for (const QubitKick& k : kicks)
      if (std::abs(k.t - t) < 1e-12) apply_kick(model, k, rho);
  };
  auto record = [&](double t) {
    ComplexMatrix m(d);
    std::vector<double> pops(static_cast<size_t>(d));
    double tr = 0.0;
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) m(r, c) = rho[static_cast<size_t>(r) * d + c];
      pops[static_cast<size_t>(r)] = m(r, r).real();
      tr += pops[static_cast<size_t>(r)];
    }
    if (model.trace_preserving && std::abs(tr - 1.0) > 1e-6)
      throw NumericalError("evolve: trace drift exceeds 1e-6, reduce dt");
    traj.times.push_back(t);
    traj.states.push_back(std::move(m));
    traj.populations.push_back(std::move(pops));
  };

  apply_kicks_at(0.0);
  record(0.0);

  long long step_count = 0;
  for (size_t ev = 0; ev + 1 < events.size(); ++ev) {
    const double t_lo = events[ev], t_hi = events[ev + 1];
    const double len = t_hi - t_lo;
    if (len <= 0.0) continue;
    integ.set_interval(t_lo, t_hi);
    const long long n = std::max<long long>(1, static_cast<long long>(std::ceil(len / dt - 1e-9)));
    const double h = len / static_cast<double>(n);
    for (long long i = 0; i < n; ++i) {
      integ.rk4_step(t_lo + static_cast<double>(i) * h, h, rho);
      ++step_count;
      const double t_now = (i + 1 == n) ? t_hi : t_lo + static_cast<double>(i + 1) * h;
      const bool at_end = (ev + 2 == events.size()) && (i + 1 == n);
      if (i + 1 == n) apply_kicks_at(t_hi);
      if (step_count % sample_stride == 0 || at_end || i + 1 == n) record(t_now);
    }
  }
  return traj;
}

}  // namespace rydsim
