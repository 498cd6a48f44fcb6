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

#include <stdexcept>

#include "thermoweak/spin_thermal.hpp"

namespace thermoweak {

/// Postselected state has (numerically) zero overlap with the thermal state.
struct OrthogonalPostselectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The inversion denominator Conv(S_z,H) - <S_z H> vanishes: the
/// postselection carries no temperature signal (S_z eigenstates, H = 0, or
/// an accidental zero of the sensitivity).
struct InsensitivePostselectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class WeakValueKind { exact, first_order };

/// Weak value of S_z between the thermal state and the postselection,
/// S_w = <psi_f|S_z rho|psi_f> / <psi_f|rho|psi_f>.
struct WeakValue {
  Complex value;
  WeakValueKind kind;
};

/// The four scalars of the linearized relation
///   S_w ~ <S_z> + beta * (Conv(S_z,H) - <S_z H>),
/// where Conv(S_z,H) = <S_z><H> and every bracket is taken in |psi_f>.
/// <S_z H> is generally complex since S_z H is not Hermitian.
struct InversionCoefficients {
  double sz_mean;
  double h_mean;
  Complex szh_mean;
  double conv;
  double h_norm;  // spectral norm of H, used to scale the degeneracy cutoff

  Complex denominator() const { return Complex(conv, 0.0) - szh_mean; }
};

struct BetaEstimate {
  double beta;
  double imag_residue;  // imaginary part of the complex ratio, a model-error diagnostic
};

/// S_z = diag(1/2, -1/2).
CMatrix spin_z();

/// Exact complex weak value; no expansion in beta. For an S_z-eigenstate
/// postselection the result is exactly +-1/2 and beta-independent.
WeakValue weak_value_exact(const SpinDensity& rho, const SpinState& psi_f);

/// Fully linearized weak value, the algebraic inverse of invert_beta.
/// Rejected when beta*||H|| > 0.5; the expansion degrades noticeably above
/// beta*||H|| ~ 0.1.
WeakValue weak_value_first_order(const CMatrix& h, const SpinState& psi_f,
                                 InverseTemperature beta);

InversionCoefficients inversion_coefficients(const CMatrix& h, const SpinState& psi_f);

/// beta_hat = Re[(S_w - <S_z>) / (Conv(S_z,H) - <S_z H>)]. Throws
/// InsensitivePostselectionError when |denominator| <= tol_scale*||H||.
BetaEstimate invert_beta(const WeakValue& s_w, const InversionCoefficients& coeffs,
                         double tol_scale = 1e-15);

/// The special-case inversion beta = 2(1 - 2 S_w)/(omega_r + 3 omega_z),
/// evaluated verbatim on Re(S_w) for comparison against the general form.
double invert_beta_symmetric_x(const WeakValue& s_w, const SpinParams& p);

}  // namespace thermoweak
