// Copyright 2026 The thermoweak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thermoweak/metrology.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "thermoweak/sampling.hpp"

namespace thermoweak {

Complex dSw_dbeta(const CMatrix& h, const SpinState& psi_f, InverseTemperature beta) {
  const SpinDensity rho = gibbs_state(h, beta);
  const CMatrix sz = spin_z();
  const Complex num = sandwich(psi_f, sz * rho, psi_f);
  const Complex den = sandwich(psi_f, rho, psi_f);
  if (!(den.real() > 1e-300)) {
    throw OrthogonalPostselectionError(
        "dSw_dbeta: <psi_f|rho|psi_f> vanishes");
  }
  // Quotient rule. The partition-function normalization inside rho cancels
  // between the two terms, so rho can be used in place of e^{-beta H}.
  const Complex num_prime = -sandwich(psi_f, sz * h * rho, psi_f);
  const Complex den_prime = -sandwich(psi_f, h * rho, psi_f);
  return (num_prime * den - num * den_prime) / (den * den);
}

QfiResult qfi_analytic(InverseTemperature beta, const PostselectionAngles& angles,
                       const CouplingParams& c, const SpinParams& p) {
  const CMatrix h = build_spin_hamiltonian(p);
  const SpinState psi_f = postselect_state(angles);
  const Complex s_w = weak_value_exact(gibbs_state(h, beta), psi_f).value;
  const Complex ds_w = dSw_dbeta(h, psi_f, beta);
  const Complex amp = Complex(0, 1) * c.g0 * s_w;
  const Complex amp_prime = Complex(0, 1) * c.g0 * ds_w;
  const double n = 1.0 + std::norm(amp);
  return {4.0 * std::norm(amp_prime) / (n * n), QfiMethod::analytic, beta.beta, angles};
}

namespace {

// 1 - |<phi_a|phi_b>| for two states ~ |0> + c|1>, via
// 1 - |<phi_a|phi_b>|^2 = |c_a - c_b|^2/(N_a N_b); cancellation-free.
double overlap_deficit(Complex c_a, Complex c_b) {
  const double q = std::norm(c_a - c_b) /
                   ((1.0 + std::norm(c_a)) * (1.0 + std::norm(c_b)));
  return q / (1.0 + std::sqrt(1.0 - q));
}

}  // namespace

QfiResult qfi_finite_difference(InverseTemperature beta, const PostselectionAngles& angles,
                                const CouplingParams& c, const SpinParams& p,
                                double rel_step) {
  const CMatrix h = build_spin_hamiltonian(p);
  const SpinState psi_f = postselect_state(angles);
  const auto weak_value_at = [&](double b) {
    return weak_value_exact(gibbs_state(h, InverseTemperature(b)), psi_f).value;
  };

  const double scale_beta = std::max(beta.beta, 1e-12);
  double delta = rel_step * scale_beta;
  const Complex s0 = weak_value_at(beta.beta);
  while (delta <= scale_beta) {
    // a step below the spacing of doubles around beta probes nothing
    if (beta.beta + delta != beta.beta) {
      const Complex s_full = weak_value_at(beta.beta + delta);
      const double diff = std::abs(s_full - s0);
      const double scale = std::max(std::abs(s0), std::abs(s_full));
      if (diff == 0.0 && delta >= 1e-3 * scale_beta) {
        // bitwise-constant weak value across the probe window: no
        // beta dependence, hence no information
        return {0.0, QfiMethod::finite_difference, beta.beta, angles};
      }
      if (diff >= 1e-10 * scale) {
        const Complex s_half = weak_value_at(beta.beta + 0.5 * delta);
        const Complex c0 = Complex(0, 1) * c.g0 * s0;
        const Complex ch = Complex(0, 1) * c.g0 * s_half;
        const Complex cf = Complex(0, 1) * c.g0 * s_full;
        const double f_half = 8.0 * overlap_deficit(c0, ch) / (0.25 * delta * delta);
        const double f_full = 8.0 * overlap_deficit(c0, cf) / (delta * delta);
        // Both estimates approximate F at the interval midpoint to first
        // order in delta; Richardson removes that term.
        return {2.0 * f_half - f_full, QfiMethod::finite_difference, beta.beta, angles};
      }
    }
    delta *= 4.0;
  }
  throw std::runtime_error(
      "qfi_finite_difference: weak-value change stayed below resolution "
      "after widening the step; insufficient precision");
}

CrbResult cramer_rao(const QfiResult& f, long n_measurements) {
  if (n_measurements < 1) {
    throw std::invalid_argument("cramer_rao: n_measurements must be >= 1");
  }
  if (!(f.fisher > 0.0)) {
    return {std::numeric_limits<double>::infinity(), n_measurements, true};
  }
  return {1.0 / (static_cast<double>(n_measurements) * f.fisher), n_measurements, false};
}

namespace {

ReplicateResult run_replicate(const ExperimentConfig& cfg,
                              const InversionCoefficients& coeffs, Complex w,
                              std::uint64_t seed, std::vector<double>* keep_z,
                              std::vector<double>* keep_p) {
  ReplicateResult rep{};
  Rng rng(seed);
  const int n_z = cfg.n_samples / 2;
  const int n_p = cfg.n_samples - n_z;
  const double c2 = std::norm(w);

  double z_sum = 0.0;
  for (int i = 0; i < n_z; ++i) {
    const double z = cfg.sigma * sample_gaussian_quadratic(2.0 * w.real(), c2, rng);
    z_sum += z;
    if (keep_z != nullptr) {
      keep_z->push_back(z);
    }
  }
  double p_sum = 0.0;
  const double p_scale = 1.0 / (2.0 * cfg.sigma);
  for (int i = 0; i < n_p; ++i) {
    const double p = p_scale * sample_gaussian_quadratic(2.0 * w.imag(), c2, rng);
    p_sum += p;
    if (keep_p != nullptr) {
      keep_p->push_back(p);
    }
  }
  rep.z_bar = z_sum / n_z;
  rep.p_bar = p_sum / n_p;

  try {
    const Complex s_w_hat =
        reconstruct_weak_value(rep.z_bar, rep.p_bar, cfg.coupling, cfg.sigma);
    rep.s_w_re = s_w_hat.real();
    rep.s_w_im = s_w_hat.imag();
    rep.beta_hat = invert_beta({s_w_hat, WeakValueKind::exact}, coeffs).beta;
    rep.ok = true;
  } catch (const std::exception& e) {
    rep.ok = false;
    rep.error = e.what();
    rep.beta_hat = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace

ExperimentRecord simulate_experiment(const ExperimentConfig& cfg) {
  if (cfg.n_samples < 1000) {
    throw std::invalid_argument("simulate_experiment: n_samples must be >= 1000");
  }
  if (cfg.n_replicates < 2) {
    throw std::invalid_argument("simulate_experiment: n_replicates must be >= 2");
  }
  const CMatrix h = build_spin_hamiltonian(cfg.spin);
  const SpinState psi_f = postselect_state(cfg.angles);
  const InverseTemperature beta(cfg.beta_true);
  const Complex s_w_true = weak_value_exact(gibbs_state(h, beta), psi_f).value;
  const Complex w = Complex(0, 1) * cfg.coupling.g0 * s_w_true;
  const InversionCoefficients coeffs = inversion_coefficients(h, psi_f);

  ExperimentRecord record{};
  record.beta_true = cfg.beta_true;
  record.seed = cfg.seed;
  record.replicates.resize(cfg.n_replicates);

  const QfiResult f = qfi_analytic(beta, cfg.angles, cfg.coupling, cfg.spin);
  record.crb = cramer_rao(f, cfg.n_samples).variance_bound;

  record.samples_z.reserve(cfg.n_samples / 2);
  record.samples_p.reserve(cfg.n_samples - cfg.n_samples / 2);
  record.replicates[0] = run_replicate(cfg, coeffs, w, derive_seed(cfg.seed, 0),
                                       &record.samples_z, &record.samples_p);

#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
  for (int r = 1; r < cfg.n_replicates; ++r) {
    record.replicates[r] =
        run_replicate(cfg, coeffs, w, derive_seed(cfg.seed, r), nullptr, nullptr);
  }

  double sum = 0.0;
  long n_ok = 0;
  for (const auto& rep : record.replicates) {
    if (rep.ok) {
      sum += rep.beta_hat;
      ++n_ok;
    }
  }
  record.beta_estimate = n_ok > 0 ? sum / n_ok : std::numeric_limits<double>::quiet_NaN();
  double ss = 0.0;
  for (const auto& rep : record.replicates) {
    if (rep.ok) {
      const double d = rep.beta_hat - record.beta_estimate;
      ss += d * d;
    }
  }
  record.sample_variance =
      n_ok > 1 ? ss / (n_ok - 1) : std::numeric_limits<double>::quiet_NaN();
  return record;
}

}  // namespace thermoweak
