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

#include "rydsim/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "rydsim/optimize.hpp"
#include "rydsim/rng.hpp"

namespace rydsim {

namespace {

constexpr double kProbClip = 1e-12;
constexpr double kTpPenaltyWeight = 1e3;

const std::array<ComplexMatrix, 4>& paulis() {
  static const std::array<ComplexMatrix, 4> p = {pauli_i(), pauli_x(), pauli_y(),
                                                 pauli_z()};
  return p;
}

/// The four standard input preparations as qubit density matrices.
const std::array<ComplexMatrix, 4>& input_states() {
  static const std::array<ComplexMatrix, 4> states = [] {
    Ket zero = Ket::basis(2, 0), one = Ket::basis(2, 1);
    Ket plus(2), plus_i(2);
    plus.amp = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    plus_i.amp = {1.0 / std::sqrt(2.0), cplx{0.0, 1.0 / std::sqrt(2.0)}};
    return std::array<ComplexMatrix, 4>{outer(zero, zero), outer(one, one),
                                        outer(plus, plus), outer(plus_i, plus_i)};
  }();
  return states;
}

/// t[setting](m,n) = tr( (I + B)/2 * sigma_m rho_in sigma_n ), the linear
/// map from chi entries to the + outcome probability of each setting.
const std::array<ComplexMatrix, 12>& setting_tensors() {
  static const std::array<ComplexMatrix, 12> tensors = [] {
    std::array<ComplexMatrix, 12> t;
    for (int j = 0; j < 4; ++j)
      for (int b = 0; b < 3; ++b) {
        ComplexMatrix proj = ComplexMatrix::identity(2);
        proj += paulis()[static_cast<size_t>(b + 1)];
        proj *= 0.5;
        ComplexMatrix entry(4);
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n)
            entry(m, n) = (proj * paulis()[static_cast<size_t>(m)] *
                           input_states()[static_cast<size_t>(j)] *
                           paulis()[static_cast<size_t>(n)])
                              .trace();
        t[static_cast<size_t>(j * 3 + b)] = entry;
      }
    return t;
  }();
  return tensors;
}

/// g[l](m,n) = tr(sigma_l sigma_n sigma_m) / 2; trace preservation reads
/// sum_mn chi_mn g[l](m,n) = delta_l0 for l = 0..3.
const std::array<ComplexMatrix, 4>& tp_tensors() {
  static const std::array<ComplexMatrix, 4> tensors = [] {
    std::array<ComplexMatrix, 4> g;
    for (int l = 0; l < 4; ++l) {
      ComplexMatrix entry(4);
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
          entry(m, n) = 0.5 * (paulis()[static_cast<size_t>(l)] *
                               paulis()[static_cast<size_t>(n)] *
                               paulis()[static_cast<size_t>(m)])
                                  .trace();
      g[static_cast<size_t>(l)] = entry;
    }
    return g;
  }();
  return tensors;
}

/// Frobenius inner product Re tr(a^dag b) on Hermitian matrices.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  double s = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) s += (std::conj(a(r, c)) * b(r, c)).real();
  return s;
}

/// sum_mn t_mn chi_mn, the (real) value of a coefficient tensor applied to
/// a Hermitian chi. Note this is not the Frobenius product: no conjugate.
double pairing(const ComplexMatrix& t, const ComplexMatrix& chi) {
  double s = 0.0;
  for (int r = 0; r < t.dim(); ++r)
    for (int c = 0; c < t.dim(); ++c) s += (t(r, c) * chi(r, c)).real();
  return s;
}

ComplexMatrix conj_entries(const ComplexMatrix& t) {
  ComplexMatrix out(t.dim());
  for (int r = 0; r < t.dim(); ++r)
    for (int c = 0; c < t.dim(); ++c) out(r, c) = std::conj(t(r, c));
  return out;
}

std::array<double, 4> tp_values(const ComplexMatrix& chi) {
  std::array<double, 4> v;
  for (int l = 0; l < 4; ++l)
    v[static_cast<size_t>(l)] = pairing(tp_tensors()[static_cast<size_t>(l)], chi);
  return v;
}

/// Frobenius-orthogonal projection of a Hermitian chi onto the trace
/// preservation affine subspace. The Frobenius gradient of the constraint
/// value pairing(g, chi) is the entrywise conjugate of g.
ComplexMatrix project_tp(const ComplexMatrix& chi) {
  static const std::array<ComplexMatrix, 4> grads = [] {
    std::array<ComplexMatrix, 4> d;
    for (int l = 0; l < 4; ++l)
      d[static_cast<size_t>(l)] = conj_entries(tp_tensors()[static_cast<size_t>(l)]);
    return d;
  }();
  static const std::vector<double> gram = [] {
    std::vector<double> g(16);
    for (int l = 0; l < 4; ++l)
      for (int k = 0; k < 4; ++k)
        g[static_cast<size_t>(l * 4 + k)] =
            real_inner(grads[static_cast<size_t>(l)], grads[static_cast<size_t>(k)]);
    return g;
  }();
  std::array<double, 4> defect = tp_values(chi);
  defect[0] -= 1.0;
  std::vector<double> rhs(defect.begin(), defect.end());
  const std::vector<double> lambda = solve_linear(gram, rhs);
  ComplexMatrix out = chi;
  for (int l = 0; l < 4; ++l) {
    const ComplexMatrix& g = grads[static_cast<size_t>(l)];
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) out(m, n) -= lambda[static_cast<size_t>(l)] * g(m, n);
  }
  // restore exact hermiticity against roundoff
  for (int m = 0; m < 4; ++m)
    for (int n = m; n < 4; ++n) {
      const cplx v = 0.5 * (out(m, n) + std::conj(out(n, m)));
      out(m, n) = v;
      out(n, m) = std::conj(v);
    }
  return out;
}

ComplexMatrix project_psd(const ComplexMatrix& chi, double* min_eig = nullptr) {
  EigenSystem es = hermitian_eigensystem(chi);
  if (min_eig != nullptr) *min_eig = es.eigenvalues.front();
  ComplexMatrix out(chi.dim());
  for (size_t k = 0; k < es.eigenvalues.size(); ++k) {
    const double lam = std::max(0.0, es.eigenvalues[k]);
    if (lam == 0.0) continue;
    const Ket& v = es.eigenvectors[k];
    for (int r = 0; r < chi.dim(); ++r)
      for (int c = 0; c < chi.dim(); ++c)
        out(r, c) += lam * v.amp[static_cast<size_t>(r)] * std::conj(v.amp[static_cast<size_t>(c)]);
  }
  return out;
}

/// Alternating projections between the PSD cone and the TP subspace,
/// finishing on the TP side so the linear constraint holds to roundoff.
ComplexMatrix project_cptp(ComplexMatrix chi) {
  for (int it = 0; it < 500; ++it) {
    chi = project_tp(chi);
    double min_eig = 0.0;
    ComplexMatrix psd = project_psd(chi, &min_eig);
    if (min_eig > -1e-12) return chi;
    chi = std::move(psd);
  }
  return project_tp(chi);
}

double setting_probability(const ComplexMatrix& chi, int setting) {
  return pairing(setting_tensors()[static_cast<size_t>(setting)], chi);
}

/// chi = T^2 / tr(T^2) from the 16 real parameters of a Hermitian T.
ComplexMatrix chi_from_params(const std::vector<double>& x) {
  ComplexMatrix t(4);
  int idx = 0;
  for (int m = 0; m < 4; ++m) t(m, m) = x[static_cast<size_t>(idx++)];
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n) {
      t(m, n) = cplx{x[static_cast<size_t>(idx)], x[static_cast<size_t>(idx + 1)]};
      t(n, m) = std::conj(t(m, n));
      idx += 2;
    }
  ComplexMatrix chi = t * t;
  const double tr = chi.trace().real();
  if (tr < 1e-12) {
    chi = ComplexMatrix(4);
    chi(0, 0) = 1.0;
    return chi;
  }
  chi *= 1.0 / tr;
  return chi;
}

std::vector<double> params_from_root(const ComplexMatrix& chi) {
  // Hermitian PSD square root via the eigensystem.
  EigenSystem es = hermitian_eigensystem(chi);
  ComplexMatrix root(4);
  for (size_t k = 0; k < es.eigenvalues.size(); ++k) {
    const double lam = std::max(0.0, es.eigenvalues[k]);
    const double s = std::sqrt(lam);
    const Ket& v = es.eigenvectors[k];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        root(r, c) += s * v.amp[static_cast<size_t>(r)] * std::conj(v.amp[static_cast<size_t>(c)]);
  }
  std::vector<double> x;
  x.reserve(16);
  for (int m = 0; m < 4; ++m) x.push_back(root(m, m).real());
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n) {
      x.push_back(root(m, n).real());
      x.push_back(root(m, n).imag());
    }
  return x;
}

/// Linear inversion: 12 measured frequencies plus the 4 trace-preservation
/// rows pin the 16 real degrees of freedom of a Hermitian chi exactly.
ComplexMatrix linear_inversion(const std::array<double, 12>& freq) {
  // unknowns: chi_mm (4), then (Re, Im) chi_mn for m < n (12)
  auto row_from_tensor = [](const ComplexMatrix& t) {
    std::vector<double> row(16);
    for (int m = 0; m < 4; ++m) row[static_cast<size_t>(m)] = t(m, m).real();
    int idx = 4;
    for (int m = 0; m < 4; ++m)
      for (int n = m + 1; n < 4; ++n) {
        row[static_cast<size_t>(idx++)] = 2.0 * t(m, n).real();
        row[static_cast<size_t>(idx++)] = -2.0 * t(m, n).imag();
      }
    return row;
  };

  std::vector<double> a;
  std::vector<double> b;
  a.reserve(16 * 16);
  for (int k = 0; k < 12; ++k) {
    const std::vector<double> row = row_from_tensor(setting_tensors()[static_cast<size_t>(k)]);
    a.insert(a.end(), row.begin(), row.end());
    b.push_back(freq[static_cast<size_t>(k)]);
  }
  for (int l = 0; l < 4; ++l) {
    const std::vector<double> row = row_from_tensor(tp_tensors()[static_cast<size_t>(l)]);
    a.insert(a.end(), row.begin(), row.end());
    b.push_back(l == 0 ? 1.0 : 0.0);
  }
  const std::vector<double> x = solve_linear(std::move(a), std::move(b));
  ComplexMatrix chi(4);
  for (int m = 0; m < 4; ++m) chi(m, m) = x[static_cast<size_t>(m)];
  int idx = 4;
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n) {
      chi(m, n) = cplx{x[static_cast<size_t>(idx)], x[static_cast<size_t>(idx + 1)]};
      chi(n, m) = std::conj(chi(m, n));
      idx += 2;
    }
  return chi;
}

/// Deterministic derivative-free refinement after the simplex descent:
/// cyclic per-coordinate parabolic steps at shrinking scales. The simplex
/// alone stalls short of the 1e-6 recovery tolerance in 16 dimensions.
void coordinate_polish(const std::function<double(const std::vector<double>&)>& f,
                       std::vector<double>& x, double& fx) {
  std::vector<double> xp, xm, xt;
  for (double h : {1e-3, 1e-4, 1e-5, 1e-6}) {
    for (int pass = 0; pass < 2; ++pass) {
      for (size_t i = 0; i < x.size(); ++i) {
        xp = x;
        xm = x;
        xp[i] += h;
        xm[i] -= h;
        const double fp = f(xp), fm = f(xm);
        const double curvature = fp - 2.0 * fx + fm;
        double step = 0.0;
        if (curvature > 0.0) {
          step = 0.5 * h * (fm - fp) / curvature;
          step = std::max(-2.0 * h, std::min(2.0 * h, step));
        } else {
          step = fp < fm ? h : -h;
        }
        xt = x;
        xt[i] += step;
        const double ft = f(xt);
        if (ft < fx) {
          x = xt;
          fx = ft;
        } else if (fp < fx) {
          x = xp;
          fx = fp;
        } else if (fm < fx) {
          x = xm;
          fx = fm;
        }
      }
    }
  }
}

ProcessMatrix fit_mle(const std::array<long long, 12>& counts, long long shots) {
  std::array<double, 12> freq;
  for (int k = 0; k < 12; ++k)
    freq[static_cast<size_t>(k)] =
        static_cast<double>(counts[static_cast<size_t>(k)]) / static_cast<double>(shots);

  const ComplexMatrix lin = linear_inversion(freq);
  {
    // When the linear inversion is already physical it reproduces every
    // measured frequency exactly, which maximizes each binomial factor
    // independently: it is the global MLE and no descent is needed.
    const EigenSystem es = hermitian_eigensystem(lin);
    if (es.eigenvalues.front() >= 1e-10) {
      ProcessMatrix exact{project_cptp(lin)};
      exact.validate();
      return exact;
    }
  }

  ComplexMatrix start = project_psd(lin);
  const double tr = start.trace().real();
  if (tr > 1e-9) start *= 1.0 / tr;
  else start = 0.25 * ComplexMatrix::identity(4);

  const double n_total = 12.0 * static_cast<double>(shots);
  auto objective = [&](const std::vector<double>& x) {
    const ComplexMatrix chi = chi_from_params(x);
    double nll = 0.0;
    for (int k = 0; k < 12; ++k) {
      double p = setting_probability(chi, k);
      p = std::min(1.0 - kProbClip, std::max(kProbClip, p));
      const double n = static_cast<double>(counts[static_cast<size_t>(k)]);
      nll -= n * std::log(p) + (static_cast<double>(shots) - n) * std::log1p(-p);
    }
    std::array<double, 4> tp = tp_values(chi);
    tp[0] -= 1.0;
    double penalty = 0.0;
    for (double v : tp) penalty += v * v;
    return nll / n_total + kTpPenaltyWeight * penalty;
  };

  // staged simplex descent within the overall iteration cap, then the
  // deterministic polish
  std::vector<double> x = params_from_root(start);
  double fx = objective(x);
  int budget = 10000;
  for (double step : {0.02, 0.004, 0.0008}) {
    if (budget <= 0) break;
    const SimplexResult stage = nelder_mead(objective, x, step, budget, 1e-10);
    budget -= stage.iterations;
    if (stage.fval < fx) {
      fx = stage.fval;
      x = stage.x;
    }
  }
  coordinate_polish(objective, x, fx);

  ProcessMatrix result{project_cptp(chi_from_params(x))};
  result.validate();
  return result;
}

}  // namespace

void ProcessMatrix::validate() const {
  if (chi.dim() != 4)
    throw std::invalid_argument("ProcessMatrix: chi must be 4x4");
  if (!chi.is_hermitian(kHermitianTol))
    throw std::invalid_argument("ProcessMatrix: chi is not Hermitian");
  EigenSystem es = hermitian_eigensystem(chi);
  if (es.eigenvalues.front() < kEigenFloor)
    throw std::invalid_argument("ProcessMatrix: chi is not positive semidefinite");
  if (tp_defect() > kTraceTol)
    throw std::invalid_argument("ProcessMatrix: trace preservation violated");
}

double ProcessMatrix::tp_defect() const {
  std::array<double, 4> v = tp_values(chi);
  v[0] -= 1.0;
  // the Pauli coefficients are orthogonal with norm^2 = 2 per component
  double s = 0.0;
  for (double c : v) s += c * c;
  return std::sqrt(2.0 * s);
}

ProcessMatrix process_from_unitary(const ComplexMatrix& u) {
  if (u.dim() != 2) throw std::invalid_argument("process_from_unitary: need a 2x2 unitary");
  std::array<cplx, 4> coeff;
  for (int m = 0; m < 4; ++m)
    coeff[static_cast<size_t>(m)] = 0.5 * (paulis()[static_cast<size_t>(m)] * u).trace();
  ComplexMatrix chi(4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      chi(m, n) = coeff[static_cast<size_t>(m)] * std::conj(coeff[static_cast<size_t>(n)]);
  return ProcessMatrix{chi};
}

ProcessMatrix ideal_sigma_z_process() { return process_from_unitary(pauli_z()); }

ComplexMatrix apply_process(const ProcessMatrix& chi, const ComplexMatrix& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("apply_process: need a qubit state");
  ComplexMatrix out(2);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      if (chi.chi(m, n) == cplx{0.0, 0.0}) continue;
      out += chi.chi(m, n) *
             (paulis()[static_cast<size_t>(m)] * rho * paulis()[static_cast<size_t>(n)]);
    }
  return out;
}

std::array<double, 12> setting_probabilities(const ProcessMatrix& chi) {
  std::array<double, 12> p;
  for (int k = 0; k < 12; ++k) p[static_cast<size_t>(k)] = setting_probability(chi.chi, k);
  return p;
}

TomographyDataset dataset_from_channel(const ProcessMatrix& chi, long long shots) {
  if (shots < 1) throw std::invalid_argument("dataset_from_channel: shots must be >= 1");
  TomographyDataset data;
  data.shots = shots;
  const std::array<double, 12> p = setting_probabilities(chi);
  for (int k = 0; k < 12; ++k)
    data.counts_plus[static_cast<size_t>(k)] =
        std::llround(p[static_cast<size_t>(k)] * static_cast<double>(shots));
  return data;
}

TomographyDataset simulate_tomography(const SystemParams& p, long long shots,
                                      std::uint64_t seed,
                                      const TomographyOptions& opt) {
  if (shots < 1) throw std::invalid_argument("simulate_tomography: shots must be >= 1");
  const LevelModel model = build_model(p, 5);
  const DensityMatrix rho0 = DensityMatrix::pure_level(5, model.index_of(Level::zero));

  struct Rotation {
    double angle, phase;
    bool present;
  };
  // preparation pulses taking |0> to the four inputs
  const std::array<Rotation, 4> prep = {{{0.0, 0.0, false},
                                         {M_PI, 0.0, true},
                                         {M_PI / 2.0, M_PI / 2.0, true},
                                         {M_PI / 2.0, M_PI, true}}};
  // analysis pulses mapping the +1 eigenstate of X, Y, Z onto |0>
  const std::array<Rotation, 3> analysis = {
      {{M_PI / 2.0, -M_PI / 2.0, true}, {M_PI / 2.0, 0.0, true}, {0.0, 0.0, false}}};

  TomographyDataset data;
  data.shots = shots;
  data.seed = seed;
  for (int j = 0; j < 4; ++j)
    for (int b = 0; b < 3; ++b) {
      PulseSequence seq;
      const PulseSequence inner = double_stirap(p, opt.t_rise, 0.0, opt.phi);
      if (prep[static_cast<size_t>(j)].present)
        seq.segments.push_back({Channel::qubit, 0.0, 0.0, Shape::flat,
                                prep[static_cast<size_t>(j)].angle + opt.ramsey_error,
                                prep[static_cast<size_t>(j)].phase});
      seq.segments.insert(seq.segments.end(), inner.segments.begin(), inner.segments.end());
      const double t_end = inner.total_duration;
      if (analysis[static_cast<size_t>(b)].present)
        seq.segments.push_back({Channel::qubit, t_end, t_end, Shape::flat,
                                analysis[static_cast<size_t>(b)].angle + opt.ramsey_error,
                                analysis[static_cast<size_t>(b)].phase});
      seq.total_duration = t_end;
      const Trajectory traj = evolve(model, seq, rho0, opt.dt, opt.sample_stride);
      const double p_plus =
          traj.population_at(traj.times.size() - 1, Level::zero, model);
      data.counts_plus[static_cast<size_t>(j * 3 + b)] =
          rng::binomial(shots, p_plus, seed, static_cast<std::uint64_t>(j * 3 + b));
    }
  return data;
}

ProcessMatrix reconstruct_process(const TomographyDataset& data) {
  if (data.shots < 1) throw std::invalid_argument("reconstruct_process: shots must be >= 1");
  const bool all_zero = std::all_of(data.counts_plus.begin(), data.counts_plus.end(),
                                    [](long long c) { return c == 0; });
  if (all_zero)
    throw std::invalid_argument("reconstruct_process: degenerate data (all counts zero)");
  for (long long c : data.counts_plus)
    if (c < 0 || c > data.shots)
      throw std::invalid_argument("reconstruct_process: counts outside [0, shots]");
  return fit_mle(data.counts_plus, data.shots);
}

double process_fidelity(const ProcessMatrix& chi, const ProcessMatrix& ideal) {
  return real_inner(ideal.chi, chi.chi);
}

BootstrapResult bootstrap_errors(const TomographyDataset& data, int replicates,
                                 std::uint64_t seed, const ProcessMatrix& ideal) {
  if (replicates < 100)
    throw std::invalid_argument("bootstrap_errors: need replicates >= 100");
  std::vector<double> fidelities;
  fidelities.reserve(static_cast<size_t>(replicates));
  for (int rep = 0; rep < replicates; ++rep) {
    TomographyDataset resampled = data;
    resampled.seed = seed;
    for (int k = 0; k < 12; ++k) {
      const double p = data.frequency(k);
      resampled.counts_plus[static_cast<size_t>(k)] = rng::binomial(
          data.shots, p, seed, static_cast<std::uint64_t>(rep) + 1, static_cast<std::uint64_t>(k));
    }
    fidelities.push_back(process_fidelity(reconstruct_process(resampled), ideal));
  }
  BootstrapResult out;
  out.p16 = quantile(fidelities, 0.16);
  out.p50 = quantile(fidelities, 0.50);
  out.p84 = quantile(fidelities, 0.84);
  return out;
}

std::vector<std::array<double, 3>> bloch_image(const ProcessMatrix& chi,
                                               int sphere_samples) {
  if (sphere_samples < 1)
    throw std::invalid_argument("bloch_image: need at least one sample");
  chi.validate();
  std::vector<std::array<double, 3>> out;
  out.reserve(static_cast<size_t>(sphere_samples));
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < sphere_samples; ++k) {
    const double z = sphere_samples == 1
                         ? 1.0
                         : 1.0 - 2.0 * (static_cast<double>(k) + 0.5) / sphere_samples;
    const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double az = golden_angle * static_cast<double>(k);
    const double v[3] = {rad * std::cos(az), rad * std::sin(az), z};
    ComplexMatrix rho = ComplexMatrix::identity(2);
    rho *= 0.5;
    for (int i = 0; i < 3; ++i) {
      ComplexMatrix s = paulis()[static_cast<size_t>(i + 1)];
      s *= 0.5 * v[i];
      rho += s;
    }
    const ComplexMatrix rho_out = apply_process(chi, rho);
    std::array<double, 3> r_out;
    for (int i = 0; i < 3; ++i)
      r_out[static_cast<size_t>(i)] =
          (paulis()[static_cast<size_t>(i + 1)] * rho_out).trace().real();
    out.push_back(r_out);
  }
  return out;
}

std::string dataset_to_json(const TomographyDataset& data) {
  nlohmann::json j;
  j["shots"] = data.shots;
  j["seed"] = data.seed;
  j["inputs"] = {"0", "1", "+", "+i"};
  j["bases"] = {"X", "Y", "Z"};
  j["counts_plus"] = data.counts_plus;
  return j.dump(2);
}

TomographyDataset dataset_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  TomographyDataset data;
  data.shots = j.at("shots").get<long long>();
  data.seed = j.value("seed", 0ULL);
  const auto counts = j.at("counts_plus");
  if (counts.size() != 12)
    throw std::invalid_argument("dataset_from_json: counts_plus must have 12 entries");
  for (int k = 0; k < 12; ++k)
    data.counts_plus[static_cast<size_t>(k)] = counts[static_cast<size_t>(k)].get<long long>();
  return data;
}

std::string process_to_json(const ProcessMatrix& chi) {
  nlohmann::json j;
  j["basis"] = {"I", "X", "Y", "Z"};
  std::vector<double> re, im;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      re.push_back(chi.chi(m, n).real());
      im.push_back(chi.chi(m, n).imag());
    }
  j["chi_real"] = re;
  j["chi_imag"] = im;
  return j.dump(2);
}

ProcessMatrix process_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const auto re = j.at("chi_real");
  const auto im = j.at("chi_imag");
  if (re.size() != 16 || im.size() != 16)
    throw std::invalid_argument("process_from_json: need 16 real and imaginary entries");
  ComplexMatrix chi(4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) {
      const size_t idx = static_cast<size_t>(m * 4 + n);
      chi(m, n) = cplx{re[idx].get<double>(), im[idx].get<double>()};
    }
  return ProcessMatrix{chi};
}

}  // namespace rydsim
