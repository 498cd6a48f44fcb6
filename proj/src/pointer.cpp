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

#include "thermoweak/pointer.hpp"

#include <cmath>
#include <stdexcept>

namespace thermoweak {

namespace {

// t * H_total in the dimensionless form used by the evolution exponent.
CMatrix evolution_generator(const CouplingParams& c, const FockSpace& space,
                            const CMatrix* h_spin) {
  const FockOperators ops = fock_operators(space);
  const CMatrix spin_id = CMatrix::Identity(2, 2);
  CMatrix ht = -c.g0 * tensor(spin_z(), ops.a + ops.adag);
  if (c.include_free_evolution) {
    if (h_spin == nullptr) {
      throw std::invalid_argument(
          "evolve_exact: free evolution requested without a spin Hamiltonian");
    }
    if (!(c.t > 0.0)) {
      throw std::invalid_argument(
          "evolve_exact: free evolution requires a positive interaction time");
    }
    const CMatrix number_op = ops.adag * ops.a;
    ht += c.t * c.omega_c * tensor(spin_id, number_op);
    ht += c.t * tensor(*h_spin, CMatrix::Identity(space.dim, space.dim));
  }
  return ht;
}

}  // namespace

PointerState gaussian_ground_state(const FockSpace& space) {
  CVector coeffs = CVector::Zero(space.dim);
  coeffs[0] = 1.0;
  return {coeffs, space.sigma};
}

JointState evolve_exact(const SpinDensity& rho_s, const PointerState& pointer,
                        const CouplingParams& c, const CMatrix* h_spin) {
  const int d = static_cast<int>(pointer.coeffs.size());
  const FockSpace space(d, pointer.sigma);
  const CMatrix u = hermitian_exp(evolution_generator(c, space, h_spin), Complex(0, -1));
  const CMatrix rho0 = tensor(rho_s, pointer.coeffs * pointer.coeffs.adjoint());
  JointState out{u * rho0 * u.adjoint(), pointer.sigma};

  double leak = 0.0;
  for (int s = 0; s < 2; ++s) {
    leak += out.density(s * d + d - 1, s * d + d - 1).real();
    leak += out.density(s * d + d - 2, s * d + d - 2).real();
  }
  if (leak > 1e-8) {
    throw TruncationError(
        "truncation insufficient: the evolved state populates the top two "
        "Fock levels beyond 1e-8; increase the Fock dimension");
  }
  return out;
}

JointState first_order_state(const SpinDensity& rho_s, const PointerState& pointer,
                             const CouplingParams& c) {
  const int d = static_cast<int>(pointer.coeffs.size());
  const FockSpace space(d, pointer.sigma);
  const FockOperators ops = fock_operators(space);
  const CMatrix coupling = tensor(spin_z(), ops.a + ops.adag);
  const CMatrix rho0 = tensor(rho_s, pointer.coeffs * pointer.coeffs.adjoint());
  const CMatrix commutator = coupling * rho0 - rho0 * coupling;
  return {rho0 + Complex(0, c.g0) * commutator, pointer.sigma};
}

PointerProjection postselect_pointer(const JointState& joint, const SpinState& psi_f) {
  const int d = static_cast<int>(joint.density.rows()) / 2;
  CMatrix reduced = CMatrix::Zero(d, d);
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 2; ++t) {
      reduced += std::conj(psi_f[s]) * psi_f[t] * joint.density.block(s * d, t * d, d, d);
    }
  }
  const double prob = reduced.trace().real();
  if (!(prob > 1e-300)) {
    throw OrthogonalPostselectionError(
        "postselect_pointer: postselection probability vanishes");
  }
  reduced /= prob;
  reduced = 0.5 * (reduced + CMatrix(reduced.adjoint()));
  return {reduced, joint.sigma, prob};
}

PointerState weak_final_state(Complex s_w, const CouplingParams& c,
                              const FockSpace& space) {
  const Complex w = Complex(0, 1) * c.g0 * s_w;
  const double kappa = 1.0 / std::sqrt(1.0 + std::norm(w));
  CVector coeffs = CVector::Zero(space.dim);
  coeffs[0] = kappa;
  coeffs[1] = kappa * w;
  return {coeffs, space.sigma};
}

ReadoutPair pointer_readouts(const PointerState& state, const CouplingParams& c) {
  const int d = static_cast<int>(state.coeffs.size());
  const FockSpace space(d, state.sigma);
  const FockOperators ops = fock_operators(space);

  ReadoutPair out;
  out.matrix.z_mean = expectation(state.coeffs, ops.z).real();
  out.matrix.p_mean = expectation(state.coeffs, ops.p).real();

  if (c.g0 == 0.0) {
    out.closed_form = {0.0, 0.0};
    return out;
  }
  // A weak-limit state encodes S_w in its first two coefficients.
  const Complex s_w = state.coeffs[1] / (Complex(0, 1) * c.g0 * state.coeffs[0]);
  const double k2 = 1.0 / (1.0 + c.g0 * c.g0 * std::norm(s_w));
  out.closed_form.z_mean = -2.0 * state.sigma * c.g0 * k2 * s_w.imag();
  out.closed_form.p_mean = k2 * c.g0 / state.sigma * s_w.real();
  return out;
}

Complex reconstruct_weak_value(double z_mean, double p_mean, const CouplingParams& c,
                               double sigma) {
  if (!(c.g0 > 0.0)) {
    throw std::invalid_argument("reconstruct_weak_value: requires g0 > 0");
  }
  double k2 = 1.0;
  Complex s_w(0.0, 0.0);
  for (int iter = 0; iter < 100; ++iter) {
    const Complex next(p_mean * sigma / (c.g0 * k2),
                       -z_mean / (2.0 * sigma * c.g0 * k2));
    const double change = std::abs(next - s_w);
    s_w = next;
    k2 = 1.0 / (1.0 + c.g0 * c.g0 * std::norm(s_w));
    if (change <= 1e-12 * std::max(1.0, std::abs(s_w))) {
      return s_w;
    }
  }
  throw std::runtime_error(
      "reconstruct_weak_value: kappa^2 fixed point did not converge");
}

double purity(const CMatrix& rho) {
  return (rho * rho).trace().real();
}

CVector dominant_eigenvector(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
  return solver.eigenvectors().col(rho.rows() - 1);  // eigenvalues ascending
}

}  // namespace thermoweak
