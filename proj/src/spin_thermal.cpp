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

#include "thermoweak/spin_thermal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace thermoweak {

InverseTemperature::InverseTemperature(double b) : beta(b) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("InverseTemperature: beta must be finite and >= 0");
  }
}

CMatrix build_spin_hamiltonian(const SpinParams& p) {
  if (!std::isfinite(p.omega_z) || !std::isfinite(p.omega_r)) {
    throw std::invalid_argument("build_spin_hamiltonian: parameters must be finite");
  }
  CMatrix h(2, 2);
  h << 0.5 * p.omega_z, 0.5 * p.omega_r,
       0.5 * p.omega_r, -0.5 * p.omega_z;
  return h;
}

double hermitian_norm(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

SpinDensity gibbs_state(const CMatrix& h, InverseTemperature beta) {
  if (!is_hermitian(h)) {
    throw std::invalid_argument("gibbs_state: Hamiltonian is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  const Eigen::VectorXd evals = solver.eigenvalues();
  if (beta.beta * evals.cwiseAbs().maxCoeff() > 700.0) {
    throw std::invalid_argument("gibbs_state: beta*||H|| exceeds the double exponent range");
  }
  const double shift = evals.minCoeff();
  CVector weights(evals.size());
  double z = 0.0;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    weights[i] = std::exp(-beta.beta * (evals[i] - shift));
    z += weights[i].real();
  }
  weights /= z;
  CMatrix rho = solver.eigenvectors() * weights.asDiagonal() *
                solver.eigenvectors().adjoint();
  rho = 0.5 * (rho + CMatrix(rho.adjoint()));
  rho /= rho.trace().real();
  return rho;
}

SpinState postselect_state(const PostselectionAngles& a) {
  if (!(a.theta >= 0.0 && a.theta <= std::numbers::pi)) {
    throw std::invalid_argument("postselect_state: theta must lie in [0, pi]");
  }
  if (!(a.phi >= 0.0 && a.phi < 2.0 * std::numbers::pi)) {
    throw std::invalid_argument("postselect_state: phi must lie in [0, 2*pi)");
  }
  double c = std::cos(0.5 * a.theta);
  double s = std::sin(0.5 * a.theta);
  if (a.theta == std::numbers::pi) {
    // cos(pi/2) evaluates to ~6e-17 because pi itself is rounded; the south
    // pole must be an exact S_z eigenstate.
    c = 0.0;
    s = 1.0;
  }
  SpinState psi(2);
  psi << Complex(c, 0.0), std::polar(s, a.phi);
  return psi;
}

}  // namespace thermoweak
