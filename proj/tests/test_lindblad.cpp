#include <cmath>

#include <doctest.h>

#include "rydsim/lindblad.hpp"

using namespace rydsim;

namespace {

SystemParams decay_only_params(double gamma_e, double tau_r) {
  SystemParams p;
  p.gamma_e = gamma_e;
  p.tau_r = tau_r;
  return p;
}

PulseSequence idle_sequence(double duration) {
  PulseSequence seq;
  seq.total_duration = duration;
  return seq;
}

PulseSequence flat_pump(double omega, double duration) {
  PulseSequence seq;
  seq.segments = {{Channel::pump, 0.0, duration, Shape::flat, omega, 0.0}};
  seq.total_duration = duration;
  return seq;
}

SystemParams stirap_test_params() {
  SystemParams p;
  p.omega_p = 2.0 * M_PI * 47.0;
  p.omega_s = 2.0 * M_PI * 47.0;
  p.gamma_e = 2.0 * M_PI * 4.5;
  p.tau_r = 2.3;
  p.gamma_laser_p = 2.0 * M_PI * 0.1;
  p.gamma_laser_s = 2.0 * M_PI * 0.1;
  return p;
}

double total_rate_out_of(const LevelModel& model, Level level, bool decay_only) {
  const int idx = model.index_of(level);
  double rate = 0.0;
  for (const CollapseOp& c : model.collapse_ops) {
    // skip dephasing (diagonal ops acting on more than one level or pure projectors)
    bool is_jump_or_loss = false;
    int nonzeros = 0;
    for (int r = 0; r < model.dim; ++r)
      for (int cc = 0; cc < model.dim; ++cc)
        if (c.op(r, cc) != cplx{0.0, 0.0}) ++nonzeros;
    if (nonzeros == 1) is_jump_or_loss = true;
    if (decay_only && !is_jump_or_loss) continue;
    const ComplexMatrix k = c.op.adjoint() * c.op;
    rate += k(idx, idx).real();
  }
  return rate;
}

}  // namespace

TEST_SUITE("lindblad") {

TEST_CASE("build_model: decay out of |e> totals gamma_e, out of |r> totals 1/tau_r") {
  SystemParams p = decay_only_params(2.0 * M_PI * 4.5, 2.3);
  for (int dim : {4, 5}) {
    const LevelModel model = build_model(p, dim);
    CHECK(model.trace_preserving);
    CHECK(total_rate_out_of(model, Level::e, true) ==
          doctest::Approx(p.gamma_e).epsilon(1e-12));
    CHECK(total_rate_out_of(model, Level::r, true) ==
          doctest::Approx(1.0 / p.tau_r).epsilon(1e-12));
  }
}

TEST_CASE("build_model: 3-level decay is non-recycling loss") {
  SystemParams p = decay_only_params(2.0 * M_PI * 4.5, 2.3);
  const LevelModel model = build_model(p, 3);
  CHECK_FALSE(model.trace_preserving);
  CHECK(total_rate_out_of(model, Level::e, true) ==
        doctest::Approx(p.gamma_e).epsilon(1e-12));
  CHECK_THROWS_AS(build_model(p, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_model(p, 6), std::invalid_argument);
}

TEST_CASE("zero couplings and zero decay leave the state constant") {
  SystemParams p;
  const LevelModel model = build_model(p, 5);
  ComplexMatrix m(5);
  m(2, 2) = 0.6;
  m(4, 4) = 0.4;
  m(2, 4) = cplx{0.2, 0.1};
  m(4, 2) = std::conj(m(2, 4));
  const DensityMatrix rho0 = DensityMatrix::from_matrix(m);
  const Trajectory traj = evolve(model, idle_sequence(2.0), rho0, 1e-3, 100);
  CHECK(max_abs_diff(traj.final_state(), m) < 1e-12);
}

TEST_CASE("pure |e> decay follows the analytic exponential") {
  const double gamma = 2.0 * M_PI * 4.5;
  SystemParams p = decay_only_params(gamma, 1e30);
  const LevelModel model = build_model(p, 4);
  const DensityMatrix rho0 = DensityMatrix::pure_level(4, model.index_of(Level::e));
  const double t_final = 0.12;
  const Trajectory traj = evolve(model, idle_sequence(t_final), rho0, 1e-4, 10);
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double expected = std::exp(-gamma * traj.times[i]);
    CHECK(std::abs(traj.population_at(i, Level::e, model) - expected) < 1e-6);
  }
  // the branch ends in the ground sink
  CHECK(traj.population_at(traj.times.size() - 1, Level::s_plus, model) ==
        doctest::Approx(1.0 - std::exp(-gamma * t_final)).epsilon(1e-8));
}

TEST_CASE("resonant flat drive reproduces the analytic Rabi oscillation") {
  SystemParams p;  // no decay at all
  p.omega_p = 2.0 * M_PI * 1.0;
  const LevelModel model = build_model(p, 3);
  const DensityMatrix rho0 = DensityMatrix::pure_level(3, model.index_of(Level::zero));
  const Trajectory traj = evolve(model, flat_pump(p.omega_p, 2.0), rho0, 1e-3, 20);
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double expected = std::pow(std::sin(0.5 * p.omega_p * traj.times[i]), 2);
    CHECK(std::abs(traj.population_at(i, Level::e, model) - expected) < 1e-6);
  }
}

TEST_CASE("trace is preserved to 1e-8 over a full STIRAP sequence") {
  const SystemParams p = stirap_test_params();
  const LevelModel model = build_model(p, 5);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  const Trajectory traj =
      evolve(model, double_stirap(p, 0.2, 0.5, 1.3), rho0, kDefaultDt, 25);
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double tr = traj.states[i].trace().real();
    CHECK(std::abs(tr - 1.0) <= 1e-8);
  }
}

TEST_CASE("sampled states stay positive within -1e-7") {
  const SystemParams p = stirap_test_params();
  const LevelModel model = build_model(p, 5);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  const Trajectory traj =
      evolve(model, single_stirap(p, 0.2), rho0, kDefaultDt, 25);
  for (const ComplexMatrix& state : traj.states) {
    const EigenSystem es = hermitian_eigensystem(state);
    CHECK(es.eigenvalues.front() >= -1e-7);
  }
}

TEST_CASE("halving dt changes final populations below 1e-7") {
  const SystemParams p = stirap_test_params();
  const LevelModel model = build_model(p, 5);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  const PulseSequence seq = single_stirap(p, 0.2);
  const Trajectory coarse = evolve(model, seq, rho0, kDefaultDt, 1000000);
  const Trajectory fine = evolve(model, seq, rho0, kDefaultDt / 2.0, 1000000);
  for (int k = 0; k < 5; ++k)
    CHECK(std::abs(coarse.populations.back()[static_cast<size_t>(k)] -
                   fine.populations.back()[static_cast<size_t>(k)]) <= 1e-7);
}

TEST_CASE("adiabatic limit: long ramps transfer everything") {
  SystemParams p;
  p.omega_p = 2.0 * M_PI * 47.0;
  p.omega_s = 2.0 * M_PI * 47.0;
  const LevelModel model = build_model(p, 5);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  const Trajectory traj = evolve(model, single_stirap(p, 2.0), rho0, 2e-4, 500);
  CHECK(traj.population_at(traj.times.size() - 1, Level::r, model) >= 0.999);
}

TEST_CASE("equal Zeeman branching pumps both ground sublevels equally") {
  SystemParams p;
  p.omega_p = 2.0 * M_PI * 1.0;
  p.gamma_e = 2.0 * M_PI * 4.5;
  p.tau_r = 1e30;
  const LevelModel model = build_model(p, 5);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  // long weak pumping empties |0> into the two 5S sublevels
  const Trajectory traj = evolve(model, flat_pump(p.omega_p, 40.0), rho0, 2e-3, 1000);
  const double p1 = traj.population_at(traj.times.size() - 1, Level::s_minus, model);
  const double ps = traj.population_at(traj.times.size() - 1, Level::s_plus, model);
  CHECK(p1 == doctest::Approx(ps).epsilon(1e-9));
  CHECK(p1 + ps > 0.999);
}

TEST_CASE("3-level lossy model leaks trace monotonically") {
  SystemParams p = decay_only_params(2.0 * M_PI * 4.5, 1e30);
  const LevelModel model = build_model(p, 3);
  const DensityMatrix rho0 = DensityMatrix::pure_level(3, model.index_of(Level::e));
  const Trajectory traj = evolve(model, idle_sequence(0.1), rho0, 1e-4, 20);
  double last = 1.0;
  for (const ComplexMatrix& state : traj.states) {
    const double tr = state.trace().real();
    CHECK(tr <= last + 1e-12);
    last = tr;
  }
  CHECK(last == doctest::Approx(std::exp(-p.gamma_e * 0.1)).epsilon(1e-6));
}

TEST_CASE("oversized steps are rejected, runaway integration trips the trace check") {
  const SystemParams p = stirap_test_params();
  const LevelModel model = build_model(p, 5);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  CHECK_THROWS_AS(evolve(model, single_stirap(p, 0.2), rho0, 0.01), std::invalid_argument);

  // flat segments carry no ramp guard: a hugely unstable step must trip
  // the runtime trace monitor instead
  SystemParams fast;
  fast.omega_p = 400.0;
  fast.gamma_e = 50.0;
  const LevelModel m4 = build_model(fast, 4);
  const DensityMatrix r4 = DensityMatrix::pure_level(4, m4.index_of(Level::zero));
  CHECK_THROWS_AS(evolve(m4, flat_pump(fast.omega_p, 10.0), r4, 0.02, 1),
                  NumericalError);
}

TEST_CASE("qubit rotations require the five-level model") {
  SystemParams p;
  p.omega_p = 1.0;
  const LevelModel model = build_model(p, 3);
  PulseSequence seq;
  seq.segments = {{Channel::qubit, 0.0, 0.0, Shape::flat, M_PI, 0.0}};
  seq.total_duration = 0.0;
  const DensityMatrix rho0 = DensityMatrix::pure_level(3, model.index_of(Level::zero));
  CHECK_THROWS_AS(evolve(model, seq, rho0, 1e-3), std::invalid_argument);
}

TEST_CASE("ideal double STIRAP imprints e^{i phi} on the |0> amplitude") {
  // decay-free adiabatic limit: evolve (|0> + |1>)/sqrt(2) through the
  // phase-stepped sequence and read the qubit coherence phase
  SystemParams p;
  p.omega_p = 2.0 * M_PI * 47.0;
  p.omega_s = 2.0 * M_PI * 47.0;
  const LevelModel model = build_model(p, 5);
  const double phi = 0.7;
  PulseSequence seq;
  const PulseSequence inner = double_stirap(p, 1.0, 0.0, phi);
  seq.segments.push_back({Channel::qubit, 0.0, 0.0, Shape::flat, M_PI / 2.0, M_PI / 2.0});
  seq.segments.insert(seq.segments.end(), inner.segments.begin(), inner.segments.end());
  seq.total_duration = inner.total_duration;
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  const Trajectory traj = evolve(model, seq, rho0, 2e-4, 1000);
  const ComplexMatrix& final_state = traj.final_state();
  const int i0 = model.index_of(Level::zero), i1 = model.index_of(Level::s_minus);
  const cplx coherence = final_state(i0, i1);
  CHECK(std::abs(coherence) == doctest::Approx(0.5).epsilon(5e-3));
  CHECK(std::arg(coherence) == doctest::Approx(phi).epsilon(0.02));
}

TEST_CASE("two same-phase pi/2 rotations move |0> fully to |1>") {
  SystemParams p;
  const LevelModel model = build_model(p, 5);
  PulseSequence inner;
  inner.total_duration = 0.0;
  const PulseSequence seq = ramsey_wrap(inner, M_PI / 2.0, 0.0, 0.0);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  const Trajectory traj = evolve(model, seq, rho0, 1e-3);
  CHECK(traj.population_at(traj.times.size() - 1, Level::s_minus, model) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a single pi rotation inverts the qubit") {
  SystemParams p;
  const LevelModel model = build_model(p, 5);
  PulseSequence inner;
  inner.total_duration = 0.0;
  const PulseSequence seq = ramsey_wrap(inner, M_PI, 0.4, 0.4);
  // wrap applies two pi pulses: |0> -> |1> -> |0|; use kicks directly instead
  PulseSequence one;
  one.segments = {{Channel::qubit, 0.0, 0.0, Shape::flat, M_PI, 0.4}};
  one.total_duration = 0.0;
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));
  const Trajectory traj = evolve(model, one, rho0, 1e-3);
  CHECK(traj.population_at(traj.times.size() - 1, Level::s_minus, model) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const Trajectory both = evolve(model, seq, rho0, 1e-3);
  CHECK(both.population_at(both.times.size() - 1, Level::zero, model) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

}  // TEST_SUITE
