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

#pragma once

#include "thermoweak/weak_value.hpp"

namespace thermoweak {

/// Requested coupling pushes population into the top Fock levels.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Spin-cantilever coupling. g0 = g*t*sigma is the dimensionless measurement
/// strength; t and omega_c matter only when the free-evolution terms are
/// switched on (the default is the impulsive approximation, interaction
/// term only).
struct CouplingParams {
  double g0 = 0.0;
  double t = 0.0;
  bool include_free_evolution = false;
  double omega_c = 0.0;
};

/// Pure cantilever state as coefficients over the truncated Fock basis.
struct PointerState {
  CVector coeffs;
  double sigma;
};

/// Joint spin (x) cantilever density matrix, dimension 2D x 2D.
struct JointState {
  CMatrix density;
  double sigma;
};

/// Postselected (reduced, normalized) cantilever density matrix together
/// with the postselection probability.
struct PointerProjection {
  CMatrix density;
  double sigma;
  double probability;
};

struct Readouts {
  double z_mean;
  double p_mean;
};

/// The two routes to <z>, <p>: a generic matrix expectation, and the
/// weak-limit closed forms <z> = -2 sigma g0 k^2 Im S_w,
/// <p> = (k^2 g0 / sigma) Re S_w with k^2 = 1/(1 + g0^2 |S_w|^2).
struct ReadoutPair {
  Readouts matrix;
  Readouts closed_form;
};

/// Fock vacuum |0>, whose position wavefunction is the Gaussian of width
/// sigma: (2 pi sigma^2)^{-1/4} exp(-z^2 / 4 sigma^2).
PointerState gaussian_ground_state(const FockSpace& space);

/// Exact unitary evolution rho(t) = U rho(0) U† of rho_s (x) |phi><phi| with
/// U = exp(+i g0 S_z (x) (a + a†)), plus the optional free terms
/// omega_c a†a and H_s when include_free_evolution is set (h_spin required
/// in that case). Throws TruncationError if more than 1e-8 of the population
/// ends up in the top two Fock levels.
JointState evolve_exact(const SpinDensity& rho_s, const PointerState& pointer,
                        const CouplingParams& c, const CMatrix* h_spin = nullptr);

/// First-order expansion rho(0) + i g0 [S_z (x) (a + a†), rho(0)].
/// Trace-preserving but not positive definite; interaction term only.
JointState first_order_state(const SpinDensity& rho_s, const PointerState& pointer,
                             const CouplingParams& c);

/// Reduce the joint state onto the pointer conditioned on spin outcome
/// psi_f; probability is the trace before normalization.
PointerProjection postselect_pointer(const JointState& joint, const SpinState& psi_f);

/// Weak-limit pointer state k [|0> + i g0 S_w |1>],
/// k = (1 + g0^2 |S_w|^2)^{-1/2}.
PointerState weak_final_state(Complex s_w, const CouplingParams& c,
                              const FockSpace& space);

ReadoutPair pointer_readouts(const PointerState& state, const CouplingParams& c);

/// Invert the closed-form readouts back to S_w. The k^2 factor couples the
/// two equations, so the map is iterated from k^2 = 1 to a fixed point
/// (relative change <= 1e-12, at most 100 iterations).
Complex reconstruct_weak_value(double z_mean, double p_mean, const CouplingParams& c,
                               double sigma);

double purity(const CMatrix& rho);

/// Eigenvector of the largest eigenvalue (for comparing a nearly pure
/// density matrix against a pure reference state).
CVector dominant_eigenvector(const CMatrix& rho);

}  // namespace thermoweak
