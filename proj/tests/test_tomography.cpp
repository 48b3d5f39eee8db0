#include <cmath>

#include <doctest.h>

#include "rydsim/rng.hpp"
#include "rydsim/tomography.hpp"

using namespace rydsim;

namespace {

ProcessMatrix depolarizing_process() {
  // E(rho) = I/2 for every input: chi = diag(1,1,1,1)/4
  ComplexMatrix chi(4);
  for (int m = 0; m < 4; ++m) chi(m, m) = 0.25;
  return ProcessMatrix{chi};
}

ProcessMatrix mixed_test_channel() {
  // 0.85 of a slightly tilted unitary plus 0.15 depolarizing
  const double theta = 0.4;
  ComplexMatrix u(2);
  u(0, 0) = std::cos(theta / 2.0);
  u(1, 1) = std::cos(theta / 2.0);
  u(0, 1) = cplx{0.0, -std::sin(theta / 2.0)};
  u(1, 0) = cplx{0.0, -std::sin(theta / 2.0)};
  ComplexMatrix chi = process_from_unitary(u).chi;
  chi *= 0.85;
  ComplexMatrix dep = depolarizing_process().chi;
  dep *= 0.15;
  chi += dep;
  return ProcessMatrix{chi};
}

double chi_distance(const ProcessMatrix& a, const ProcessMatrix& b) {
  return max_abs_diff(a.chi, b.chi);
}

}  // namespace

TEST_SUITE("tomography") {

TEST_CASE("analytic identity-channel data reconstructs chi_II = 1") {
  const ProcessMatrix identity = process_from_unitary(pauli_i());
  const TomographyDataset data = dataset_from_channel(identity, 100000000);
  const ProcessMatrix fit = reconstruct_process(data);
  CHECK(std::abs(fit.chi(0, 0) - cplx{1.0, 0.0}) < 1e-6);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      if (m != 0 || n != 0) CHECK(std::abs(fit.chi(m, n)) < 1e-6);
  CHECK(process_fidelity(fit, identity) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("analytic sigma_z pi data reconstructs chi_ZZ = 1") {
  const ProcessMatrix target = ideal_sigma_z_process();
  const TomographyDataset data = dataset_from_channel(target, 100000000);
  const ProcessMatrix fit = reconstruct_process(data);
  CHECK(std::abs(fit.chi(3, 3) - cplx{1.0, 0.0}) < 1e-6);
  CHECK(process_fidelity(fit, target) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("analytic sigma_x pi data reconstructs chi_XX = 1") {
  const ProcessMatrix target = process_from_unitary(pauli_x());
  const TomographyDataset data = dataset_from_channel(target, 100000000);
  const ProcessMatrix fit = reconstruct_process(data);
  CHECK(std::abs(fit.chi(1, 1) - cplx{1.0, 0.0}) < 1e-6);
}

TEST_CASE("setting probabilities carry coherent phases with the right sign") {
  // z-rotation by theta: the +x input acquires p(+Y) = (1 + sin theta)/2
  const double theta = 0.7;
  ComplexMatrix u(2);
  u(0, 0) = std::exp(cplx{0.0, -0.5 * theta});
  u(1, 1) = std::exp(cplx{0.0, 0.5 * theta});
  const ProcessMatrix rz = process_from_unitary(u);
  const std::array<double, 12> p = setting_probabilities(rz);
  // settings: input |+> is j = 2, bases ordered X, Y, Z
  CHECK(p[6] == doctest::Approx(0.5 * (1.0 + std::cos(theta))).epsilon(1e-12));
  CHECK(p[7] == doctest::Approx(0.5 * (1.0 + std::sin(theta))).epsilon(1e-12));
  CHECK(p[8] == doctest::Approx(0.5).epsilon(1e-12));
  // input |+i> is j = 3: the +y axis rotates toward -x
  CHECK(p[9] == doctest::Approx(0.5 * (1.0 - std::sin(theta))).epsilon(1e-12));
  CHECK(p[10] == doctest::Approx(0.5 * (1.0 + std::cos(theta))).epsilon(1e-12));
  // a rotated channel must reconstruct from its own statistics
  const ProcessMatrix fit = reconstruct_process(dataset_from_channel(rz, 100000000));
  CHECK(max_abs_diff(fit.chi, rz.chi) < 1e-6);
}

TEST_CASE("ideal-limit simulation reproduces sigma_z pi-rotation statistics") {
  // decay-free, adiabatic ramps: the full five-level pipeline must give the
  // statistics of the ideal phase gate
  SystemParams p;
  p.omega_p = 2.0 * M_PI * 47.0;
  p.omega_s = 2.0 * M_PI * 47.0;
  TomographyOptions opt;
  opt.t_rise = 0.6;
  opt.dt = 2e-4;
  opt.sample_stride = 200;
  const long long shots = 1000000;
  const TomographyDataset data = simulate_tomography(p, shots, 3, opt);
  const std::array<double, 12> ideal = setting_probabilities(ideal_sigma_z_process());
  for (int k = 0; k < 12; ++k)
    CHECK(std::abs(data.frequency(k) - ideal[static_cast<size_t>(k)]) < 0.02);
  const ProcessMatrix fit = reconstruct_process(data);
  CHECK(process_fidelity(fit, ideal_sigma_z_process()) > 0.995);
}

TEST_CASE("degenerate data is rejected") {
  TomographyDataset data;
  data.shots = 50;
  CHECK_THROWS_AS(reconstruct_process(data), std::invalid_argument);
}

TEST_CASE("fidelity properties") {
  const ProcessMatrix z = ideal_sigma_z_process();
  const ProcessMatrix identity = process_from_unitary(pauli_i());
  CHECK(process_fidelity(z, z) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(process_fidelity(identity, z) == doctest::Approx(0.0).epsilon(1e-12));
  // global phase on the target leaves chi unchanged
  ComplexMatrix phased = pauli_z();
  phased *= std::exp(cplx{0.0, 1.234});
  CHECK(chi_distance(process_from_unitary(phased), z) < 1e-12);
}

TEST_CASE("MLE error decreases monotonically with analytic shot count") {
  const ProcessMatrix truth = mixed_test_channel();
  double last = 1e9;
  for (long long shots : {100, 1000, 10000}) {
    const ProcessMatrix fit = reconstruct_process(dataset_from_channel(truth, shots));
    const double err = chi_distance(fit, truth);
    CHECK(err < last);
    last = err;
  }
  CHECK(last < 2e-4);
}

TEST_CASE("reconstruction satisfies the physicality invariants on noisy data") {
  const ProcessMatrix truth = mixed_test_channel();
  const std::array<double, 12> probs = setting_probabilities(truth);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    TomographyDataset data;
    data.shots = 50;
    for (int k = 0; k < 12; ++k)
      data.counts_plus[static_cast<size_t>(k)] =
          rng::binomial(50, probs[static_cast<size_t>(k)], seed, static_cast<std::uint64_t>(k));
    const ProcessMatrix fit = reconstruct_process(data);
    CHECK_NOTHROW(fit.validate());
    CHECK(fit.tp_defect() <= 1e-6);
    const EigenSystem es = hermitian_eigensystem(fit.chi);
    CHECK(es.eigenvalues.front() >= -1e-9);
  }
}

TEST_CASE("bloch image of the identity returns the input grid") {
  const std::vector<std::array<double, 3>> img =
      bloch_image(process_from_unitary(pauli_i()), 64);
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < 64; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / 64.0;
    const double rad = std::sqrt(1.0 - z * z);
    CHECK(std::abs(img[static_cast<size_t>(k)][0] - rad * std::cos(golden_angle * k)) < 1e-9);
    CHECK(std::abs(img[static_cast<size_t>(k)][1] - rad * std::sin(golden_angle * k)) < 1e-9);
    CHECK(std::abs(img[static_cast<size_t>(k)][2] - z) < 1e-9);
  }
}

TEST_CASE("bloch image of the sigma_z gate rotates the equator by pi") {
  const auto base = bloch_image(process_from_unitary(pauli_i()), 50);
  const auto rotated = bloch_image(ideal_sigma_z_process(), 50);
  for (size_t k = 0; k < base.size(); ++k) {
    CHECK(rotated[k][0] == doctest::Approx(-base[k][0]).epsilon(1e-9));
    CHECK(rotated[k][1] == doctest::Approx(-base[k][1]).epsilon(1e-9));
    CHECK(rotated[k][2] == doctest::Approx(base[k][2]).epsilon(1e-9));
  }
}

TEST_CASE("a mixing channel contracts the Bloch sphere") {
  const auto img = bloch_image(mixed_test_channel(), 40);
  for (const auto& v : img) {
    const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    CHECK(norm < 1.0);
    CHECK(norm <= 1.0 + 1e-9);
  }
}

TEST_CASE("bootstrap of effectively infinite statistics has zero spread") {
  const ProcessMatrix target = mixed_test_channel();
  const TomographyDataset data = dataset_from_channel(target, 10000000000000000LL);
  const BootstrapResult r = bootstrap_errors(data, 100, 5, ideal_sigma_z_process());
  CHECK(std::abs(r.p84 - r.p16) < 1e-6);
  CHECK(std::abs(r.p50 - process_fidelity(target, ideal_sigma_z_process())) < 1e-6);
}

TEST_CASE("bootstrap percentiles are stable under doubling the replicates") {
  const ProcessMatrix truth = mixed_test_channel();
  const std::array<double, 12> probs = setting_probabilities(truth);
  TomographyDataset data;
  data.shots = 50;
  for (int k = 0; k < 12; ++k)
    data.counts_plus[static_cast<size_t>(k)] =
        rng::binomial(50, probs[static_cast<size_t>(k)], 77, static_cast<std::uint64_t>(k));
  const ProcessMatrix ideal = ideal_sigma_z_process();
  const BootstrapResult a = bootstrap_errors(data, 100, 3, ideal);
  const BootstrapResult b = bootstrap_errors(data, 200, 3, ideal);
  CHECK(std::abs(a.p50 - b.p50) < 0.01);
  CHECK(std::abs(a.p16 - b.p16) < 0.02);
  CHECK(std::abs(a.p84 - b.p84) < 0.02);
  CHECK_THROWS_AS(bootstrap_errors(data, 50, 3, ideal), std::invalid_argument);
}

TEST_CASE("reconstruction stays physical on extreme small-shot data") {
  // single-shot and saturated datasets are legal and must still yield CPTP
  TomographyDataset data;
  data.shots = 1;
  data.counts_plus = {1, 0, 1, 0, 1, 0, 1, 1, 0, 0, 1, 1};
  ProcessMatrix fit = reconstruct_process(data);
  CHECK_NOTHROW(fit.validate());

  data.shots = 50;
  data.counts_plus.fill(50);  // every outcome +1
  fit = reconstruct_process(data);
  CHECK_NOTHROW(fit.validate());
  CHECK(fit.tp_defect() <= 1e-6);

  data.counts_plus = {50, 0, 50, 0, 50, 0, 0, 50, 0, 50, 0, 50};
  fit = reconstruct_process(data);
  CHECK_NOTHROW(fit.validate());
}

TEST_CASE("dataset and process JSON round trips") {
  const ProcessMatrix truth = mixed_test_channel();
  const TomographyDataset data = dataset_from_channel(truth, 50);
  const TomographyDataset back = dataset_from_json(dataset_to_json(data));
  CHECK(back.shots == data.shots);
  CHECK(back.counts_plus == data.counts_plus);
  const ProcessMatrix chi_back = process_from_json(process_to_json(truth));
  CHECK(chi_distance(chi_back, truth) < 1e-12);
}

}  // TEST_SUITE
