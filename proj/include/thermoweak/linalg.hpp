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

#include <complex>
#include <Eigen/Dense>

namespace thermoweak {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

constexpr double kHermitianRelTol = 1e-12;

/// Truncated harmonic-oscillator mode: Fock levels |0>..|dim-1>, position
/// width sigma (so <0|z^2|0> = sigma^2).
struct FockSpace {
  int dim;
  double sigma;

  FockSpace(int dim_, double sigma_);
};

struct FockOperators {
  CMatrix a;     // lowering, <n-1|a|n> = sqrt(n)
  CMatrix adag;  // raising
  CMatrix z;     // sigma * (a + a†)
  CMatrix p;     // i * (a† - a) / (2 sigma), conjugate to z
};

/// Max-norm Hermiticity test, relative to the largest entry.
bool is_hermitian(const CMatrix& m, double rel_tol = kHermitianRelTol);

/// e^{s M} for Hermitian M and complex scalar s, via eigendecomposition.
/// Throws std::invalid_argument if M fails the Hermiticity check.
CMatrix hermitian_exp(const CMatrix& m, Complex s);

/// Kronecker product with A as the left (system) factor. The project-wide
/// ordering is spin ⊗ oscillator.
CMatrix tensor(const CMatrix& a, const CMatrix& b);

FockOperators fock_operators(const FockSpace& space);

/// <state|M|state> for a normalized state (norm within 1e-12 of 1).
Complex expectation(const CVector& state, const CMatrix& m);

/// <bra|M|ket> without normalization requirements.
Complex sandwich(const CVector& bra, const CMatrix& m, const CVector& ket);

}  // namespace thermoweak
