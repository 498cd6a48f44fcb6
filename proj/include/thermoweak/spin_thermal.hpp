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

#include "thermoweak/linalg.hpp"

namespace thermoweak {

// Units: hbar = k_B = 1 throughout. Frequencies are angular (rad/s), the
// inverse temperature beta is in seconds.

using SpinState = CVector;    // 2-component, unit norm
using SpinDensity = CMatrix;  // 2x2 Hermitian, unit trace, PSD

struct SpinParams {
  double omega_z = 0.0;  // longitudinal splitting, rad/s
  double omega_r = 0.0;  // transverse (Rabi) term, rad/s
};

struct InverseTemperature {
  double beta = 0.0;  // 1/(k_B T), seconds; beta >= 0

  explicit InverseTemperature(double b);
};

/// Bloch-sphere postselection direction: theta in [0, pi], phi in [0, 2pi).
struct PostselectionAngles {
  double theta = 0.0;
  double phi = 0.0;
};

/// H_s = (omega_z/2) sigma_z + (omega_r/2) sigma_x. Eigenvalues are
/// +-(1/2) sqrt(omega_z^2 + omega_r^2).
CMatrix build_spin_hamiltonian(const SpinParams& p);

/// Thermal state e^{-beta H} / Tr e^{-beta H}. Exponents are shifted by the
/// smallest eigenvalue before exponentiation so large beta does not overflow;
/// beta*||H|| > 700 is rejected outright. The returned matrix is explicitly
/// Hermitized so its diagonal is exactly real.
SpinDensity gibbs_state(const CMatrix& h, InverseTemperature beta);

/// (cos(theta/2), e^{i phi} sin(theta/2)) in the {|up>, |down>} basis.
/// theta == pi maps exactly to |down> (up to the phi phase) so that
/// spin-eigenstate postselection identities hold without roundoff.
SpinState postselect_state(const PostselectionAngles& a);

/// Spectral norm (largest |eigenvalue|) of a Hermitian matrix.
double hermitian_norm(const CMatrix& h);

}  // namespace thermoweak
