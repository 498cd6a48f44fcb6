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

#include "thermoweak/weak_value.hpp"

#include <cmath>

namespace thermoweak {

CMatrix spin_z() {
  CMatrix sz(2, 2);
  sz << 0.5, 0.0,
        0.0, -0.5;
  return sz;
}

WeakValue weak_value_exact(const SpinDensity& rho, const SpinState& psi_f) {
  const Complex num = sandwich(psi_f, spin_z() * rho, psi_f);
  const Complex den = sandwich(psi_f, rho, psi_f);
  if (!(den.real() > 1e-300)) {
    throw OrthogonalPostselectionError(
        "orthogonal postselection: <psi_f|rho|psi_f> vanishes");
  }
  return {num / den, WeakValueKind::exact};
}

InversionCoefficients inversion_coefficients(const CMatrix& h, const SpinState& psi_f) {
  InversionCoefficients c;
  const CMatrix sz = spin_z();
  c.sz_mean = sandwich(psi_f, sz, psi_f).real();
  c.h_mean = sandwich(psi_f, h, psi_f).real();
  c.szh_mean = sandwich(psi_f, sz * h, psi_f);
  c.conv = c.sz_mean * c.h_mean;
  c.h_norm = hermitian_norm(h);
  return c;
}

WeakValue weak_value_first_order(const CMatrix& h, const SpinState& psi_f,
                                 InverseTemperature beta) {
  const InversionCoefficients c = inversion_coefficients(h, psi_f);
  if (beta.beta * c.h_norm > 0.5) {
    throw std::invalid_argument(
        "weak_value_first_order: beta*||H|| > 0.5 is outside the linear regime");
  }
  return {Complex(c.sz_mean, 0.0) + beta.beta * c.denominator(),
          WeakValueKind::first_order};
}

BetaEstimate invert_beta(const WeakValue& s_w, const InversionCoefficients& coeffs,
                         double tol_scale) {
  const Complex den = coeffs.denominator();
  if (std::abs(den) <= tol_scale * coeffs.h_norm) {
    throw InsensitivePostselectionError(
        "insensitive postselection: Conv(S_z,H) - <S_z H> vanishes, "
        "psi_f cannot be an S_z eigenstate");
  }
  const Complex ratio = (s_w.value - Complex(coeffs.sz_mean, 0.0)) / den;
  return {ratio.real(), ratio.imag()};
}

double invert_beta_symmetric_x(const WeakValue& s_w, const SpinParams& p) {
  const double den = p.omega_r + 3.0 * p.omega_z;
  if (den == 0.0) {
    throw std::invalid_argument("invert_beta_symmetric_x: omega_r + 3*omega_z is zero");
  }
  return 2.0 * (1.0 - 2.0 * s_w.value.real()) / den;
}

}  // namespace thermoweak
