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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "thermoweak/pointer.hpp"

using namespace thermoweak;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

CVector coherent_state(Complex alpha, int dim) {
  CVector v(dim);
  Complex amp = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < dim; ++n) {
    v[n] = amp;
    amp *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

Eigen::VectorXd sorted_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

SpinDensity thermal(const SpinParams& p, double beta) {
  return gibbs_state(build_spin_hamiltonian(p), InverseTemperature(beta));
}

}  // namespace

TEST_CASE("gaussian ground state is the vacuum with the right moments") {
  const FockSpace space(8, 0.7);
  const PointerState vac = gaussian_ground_state(space);
  CHECK(vac.coeffs[0] == Complex(1.0, 0.0));
  for (int n = 1; n < 8; ++n) {
    CHECK(vac.coeffs[n] == Complex(0.0, 0.0));
  }
  const FockOperators ops = fock_operators(space);
  CHECK(std::abs(expectation(vac.coeffs, ops.z)) == 0.0);
  CHECK(std::abs(expectation(vac.coeffs, ops.z * ops.z) - 0.49) <= 1e-15);
}

TEST_CASE("zero coupling leaves the joint state unchanged") {
  const FockSpace space(8, 1.0);
  const SpinDensity rho = thermal({0.8, 0.3}, 0.5);
  const PointerState vac = gaussian_ground_state(space);
  const JointState out = evolve_exact(rho, vac, {0.0});
  const CMatrix rho0 = tensor(rho, vac.coeffs * vac.coeffs.adjoint());
  CHECK(max_abs_diff(out.density, rho0) <= 1e-13);
}

TEST_CASE("spin-up input displaces the pointer coherently") {
  const int d = 32;
  const double sigma = 0.9;
  const FockSpace space(d, sigma);
  SpinDensity up = CMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  const double g0 = 0.2;
  const JointState out = evolve_exact(up, gaussian_ground_state(space), {g0});
  const auto projected = postselect_pointer(out, postselect_state({0.0, 0.0}));
  CHECK(std::abs(projected.probability - 1.0) <= 1e-12);
  CHECK(std::abs(purity(projected.density) - 1.0) <= 1e-12);

  // U restricted to spin-up is exp(i (g0/2)(a + a†)) = D(i g0/2).
  const CVector expected = coherent_state(Complex(0.0, 0.5 * g0), d);
  const CVector actual = dominant_eigenvector(projected.density);
  CHECK(1.0 - std::norm(expected.dot(actual)) <= 1e-12);

  const FockOperators ops = fock_operators(space);
  const double z_mean = (ops.z * projected.density).trace().real();
  const double p_mean = (ops.p * projected.density).trace().real();
  CHECK(std::abs(z_mean) <= 1e-12);
  CHECK(std::abs(p_mean - 0.5 * g0 / sigma) <= 1e-12);
}

TEST_CASE("exact evolution preserves trace and spectrum") {
  const FockSpace space(16, 1.0);
  const SpinDensity rho = thermal({1.0, 0.7}, 0.9);
  const PointerState vac = gaussian_ground_state(space);
  const JointState out = evolve_exact(rho, vac, {0.15});
  CHECK(std::abs(out.density.trace().real() - 1.0) <= 1e-12);
  CHECK(std::abs(out.density.trace().imag()) <= 1e-14);

  const CMatrix rho0 = tensor(rho, vac.coeffs * vac.coeffs.adjoint());
  const Eigen::VectorXd before = sorted_eigenvalues(rho0);
  const Eigen::VectorXd after = sorted_eigenvalues(out.density);
  CHECK((before - after).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("insufficient truncation is rejected") {
  const FockSpace space(4, 1.0);
  SpinDensity up = CMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  CHECK_THROWS_WITH_AS(evolve_exact(up, gaussian_ground_state(space), {3.0}),
                       doctest::Contains("truncation insufficient"), TruncationError);
}

TEST_CASE("free evolution terms are optional and preserve the trace") {
  const FockSpace space(12, 1.0);
  const SpinDensity rho = thermal({0.8, 0.3}, 0.5);
  const PointerState vac = gaussian_ground_state(space);
  const CMatrix h = build_spin_hamiltonian({0.8, 0.3});
  CouplingParams c{0.1};
  c.include_free_evolution = true;
  c.t = 0.4;
  c.omega_c = 1.3;
  const JointState with_free = evolve_exact(rho, vac, c, &h);
  CHECK(std::abs(with_free.density.trace().real() - 1.0) <= 1e-12);
  const JointState impulsive = evolve_exact(rho, vac, {0.1});
  CHECK(max_abs_diff(with_free.density, impulsive.density) > 1e-4);
  CHECK_THROWS_AS(evolve_exact(rho, vac, c, nullptr), std::invalid_argument);
}

TEST_CASE("first-order state: zero coupling, exact trace, quadratic remainder") {
  const FockSpace space(16, 1.0);
  const SpinDensity rho = thermal({0.9, 0.5}, 0.4);
  const PointerState vac = gaussian_ground_state(space);

  const JointState at_zero = first_order_state(rho, vac, {0.0});
  CHECK(max_abs_diff(at_zero.density, tensor(rho, vac.coeffs * vac.coeffs.adjoint())) ==
        0.0);

  const auto remainder = [&](double g0) {
    return max_abs_diff(first_order_state(rho, vac, {g0}).density,
                        evolve_exact(rho, vac, {g0}).density);
  };
  const double g0 = 0.02;
  CHECK(std::abs(first_order_state(rho, vac, {g0}).density.trace().real() - 1.0) <=
        1e-14);
  const double ratio = remainder(g0) / remainder(g0 / 2.0);
  CHECK(ratio >= 3.4);
  CHECK(ratio <= 4.6);
  CHECK(remainder(g0) <= 2.0 * g0 * g0);
}

TEST_CASE("postselection at zero coupling reduces to the spin overlap") {
  const FockSpace space(8, 1.0);
  const SpinDensity rho = thermal({1.0, 0.4}, 0.7);
  const SpinState psi = postselect_state({1.1, 0.6});
  const auto projected =
      postselect_pointer(evolve_exact(rho, gaussian_ground_state(space), {0.0}), psi);
  CHECK(std::abs(projected.probability - sandwich(psi, rho, psi).real()) <= 1e-13);
  CHECK(std::abs(projected.density(0, 0).real() - 1.0) <= 1e-13);
}

TEST_CASE("postselection orthogonal to the spin state is rejected") {
  const FockSpace space(8, 1.0);
  SpinDensity up = CMatrix::Zero(2, 2);
  up(0, 0) = 1.0;
  const JointState joint = evolve_exact(up, gaussian_ground_state(space), {0.05});
  CHECK_THROWS_AS(postselect_pointer(joint, postselect_state({kPi, 0.0})),
                  OrthogonalPostselectionError);
}

TEST_CASE("maximally mixed spin postselects with probability 1/2 at any coupling") {
  const FockSpace space(24, 1.0);
  const SpinDensity rho = thermal({1.0, 0.4}, 0.0);
  const SpinState psi = postselect_state({kPi / 2.0, 0.0});
  for (double g0 : {0.0, 0.05, 0.4}) {
    const auto projected =
        postselect_pointer(evolve_exact(rho, gaussian_ground_state(space), {g0}), psi);
    CHECK(std::abs(projected.probability - 0.5) <= 1e-12);
  }
}

TEST_CASE("postselected exact pointer state matches the weak-limit state") {
  const int d = 32;
  const FockSpace space(d, 1.0);
  const SpinParams p{4.8e-3, 3.0};
  const double beta = 0.0333;  // beta ||H|| ~ 0.05
  const SpinDensity rho = thermal(p, beta);
  const SpinState psi = postselect_state({kPi / 4.0, 0.0});
  const Complex s_w = weak_value_exact(rho, psi).value;

  for (double g0 : {1e-3, 1e-2}) {
    const CouplingParams c{g0};
    const auto projected =
        postselect_pointer(evolve_exact(rho, gaussian_ground_state(space), c), psi);
    CHECK(purity(projected.density) > 1.0 - 10.0 * g0 * g0);
    const PointerState weak = weak_final_state(s_w, c, space);
    const double fidelity =
        std::norm(dominant_eigenvector(projected.density).dot(weak.coeffs));
    CHECK(1.0 - fidelity <= 10.0 * g0 * g0);
  }
}

TEST_CASE("weak final state coefficients and normalization") {
  const FockSpace space(8, 1.0);
  const PointerState vac_like = weak_final_state(Complex(0.0, 0.0), {0.1}, space);
  CHECK(vac_like.coeffs[0] == Complex(1.0, 0.0));
  CHECK(vac_like.coeffs[1] == Complex(0.0, 0.0));

  const PointerState st = weak_final_state(Complex(0.5, 0.0), {0.1}, space);
  const double kappa = 1.0 / std::sqrt(1.0 + 0.0025);
  CHECK(std::abs(st.coeffs[0] - Complex(kappa, 0.0)) <= 1e-16);
  CHECK(std::abs(st.coeffs[1] - Complex(0.0, 0.05 * kappa)) <= 1e-16);

  std::mt19937 gen(33);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex s_w(dist(gen), dist(gen));
    CHECK(std::abs(weak_final_state(s_w, {0.3}, space).coeffs.norm() - 1.0) <= 1e-15);
  }
}

TEST_CASE("readout identities between matrix and closed-form routes") {
  const FockSpace space(8, 0.8);
  const CouplingParams c{0.1};
  std::mt19937 gen(91);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  for (int trial = 0; trial < 100; ++trial) {
    const Complex s_w(dist(gen), dist(gen));
    const ReadoutPair r = pointer_readouts(weak_final_state(s_w, c, space), c);
    const double scale = std::max({1.0, std::abs(r.matrix.z_mean),
                                   std::abs(r.matrix.p_mean)});
    CHECK(std::abs(r.matrix.z_mean - r.closed_form.z_mean) <= 1e-12 * scale);
    CHECK(std::abs(r.matrix.p_mean - r.closed_form.p_mean) <= 1e-12 * scale);
  }
}

TEST_CASE("readout sign conventions") {
  const FockSpace space(8, 1.0);
  const CouplingParams c{0.1};
  // real S_w displaces momentum only
  const ReadoutPair real_case = pointer_readouts(weak_final_state({0.4, 0.0}, c, space), c);
  CHECK(std::abs(real_case.closed_form.z_mean) == 0.0);
  CHECK(real_case.closed_form.p_mean > 0.0);
  // imaginary S_w displaces position only, negatively for Im S_w > 0
  const ReadoutPair imag_case = pointer_readouts(weak_final_state({0.0, 0.4}, c, space), c);
  CHECK(imag_case.closed_form.z_mean < 0.0);
  CHECK(std::abs(imag_case.closed_form.p_mean) == 0.0);
  // spot value: g0 = 0.1, S_w = 1/2 -> <p> = kappa^2 * 0.05 / sigma
  const ReadoutPair spot = pointer_readouts(weak_final_state({0.5, 0.0}, c, space), c);
  CHECK(std::abs(spot.closed_form.p_mean - 0.05 / 1.0025) <= 1e-15);
}

TEST_CASE("weak value reconstruction round-trips the readouts") {
  const FockSpace space(8, 0.7);
  const CouplingParams c{0.08};
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> dist(-1.2, 1.2);
  for (int trial = 0; trial < 40; ++trial) {
    const Complex s_w(dist(gen), dist(gen));
    const ReadoutPair r = pointer_readouts(weak_final_state(s_w, c, space), c);
    const Complex back = reconstruct_weak_value(r.closed_form.z_mean,
                                                r.closed_form.p_mean, c, space.sigma);
    CHECK(std::abs(back - s_w) <= 1e-10 * std::max(1.0, std::abs(s_w)));
  }
}

TEST_CASE("weak value reconstruction edge cases") {
  CHECK(reconstruct_weak_value(0.0, 0.0, {0.1}, 1.0) == Complex(0.0, 0.0));
  CHECK_THROWS_AS(reconstruct_weak_value(0.1, 0.1, {0.0}, 1.0), std::invalid_argument);

  // 1% readout noise moves the reconstructed weak value by about 1%
  const FockSpace space(8, 1.0);
  const CouplingParams c{0.1};
  const Complex s_w(0.4, 0.3);
  const ReadoutPair r = pointer_readouts(weak_final_state(s_w, c, space), c);
  const Complex noisy = reconstruct_weak_value(r.closed_form.z_mean * 1.01,
                                               r.closed_form.p_mean * 0.99, c, 1.0);
  CHECK(std::abs(noisy - s_w) <= 0.03 * std::abs(s_w));
}

TEST_CASE("readouts are stable under doubling the truncation") {
  const SpinParams p{4.8e-3, 3.0};
  const SpinDensity rho = thermal(p, 0.02);
  const SpinState psi = postselect_state({kPi / 4.0, 0.0});
  const CouplingParams c{1e-2};
  const auto readouts_at = [&](int d) {
    const FockSpace space(d, 1.0);
    const auto projected =
        postselect_pointer(evolve_exact(rho, gaussian_ground_state(space), c), psi);
    const FockOperators ops = fock_operators(space);
    return std::pair{(ops.z * projected.density).trace().real(),
                     (ops.p * projected.density).trace().real()};
  };
  const auto [z32, p32] = readouts_at(32);
  const auto [z64, p64] = readouts_at(64);
  const double scale = std::max({std::abs(z32), std::abs(p32), std::abs(z64),
                                 std::abs(p64)});
  CHECK(std::abs(z32 - z64) <= 1e-10 * scale);
  CHECK(std::abs(p32 - p64) <= 1e-10 * scale);
}
