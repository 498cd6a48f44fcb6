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

#include "thermoweak/linalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace thermoweak {

FockSpace::FockSpace(int dim_, double sigma_) : dim(dim_), sigma(sigma_) {
  if (dim < 2) {
    throw std::invalid_argument("FockSpace: dim must be >= 2");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("FockSpace: sigma must be positive and finite");
  }
}

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  const double scale = m.cwiseAbs().maxCoeff();
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return dev <= rel_tol * std::max(scale, 1e-300);
}

CMatrix hermitian_exp(const CMatrix& m, Complex s) {
  if (!m.allFinite()) {
    throw std::invalid_argument("hermitian_exp: input has non-finite entries");
  }
  if (!is_hermitian(m)) {
    std::ostringstream msg;
    msg << "hermitian_exp: input is not Hermitian (|M - M†| = "
        << (m - m.adjoint()).cwiseAbs().maxCoeff() << ")";
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_exp: eigendecomposition failed");
  }
  const auto& evals = solver.eigenvalues();
  const auto& vecs = solver.eigenvectors();
  CVector exp_evals(evals.size());
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    exp_evals[i] = std::exp(s * evals[i]);
  }
  return vecs * exp_evals.asDiagonal() * vecs.adjoint();
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

FockOperators fock_operators(const FockSpace& space) {
  const int d = space.dim;
  FockOperators ops;
  ops.a = CMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) {
    ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  ops.adag = ops.a.adjoint();
  ops.z = space.sigma * (ops.a + ops.adag);
  ops.p = Complex(0, 1) / (2.0 * space.sigma) * (ops.adag - ops.a);
  return ops;
}

Complex sandwich(const CVector& bra, const CMatrix& m, const CVector& ket) {
  if (m.rows() != bra.size() || m.cols() != ket.size()) {
    throw std::invalid_argument("sandwich: dimension mismatch");
  }
  return bra.dot(m * ket);  // Eigen's dot conjugates the left argument
}

Complex expectation(const CVector& state, const CMatrix& m) {
  if (m.rows() != state.size() || m.cols() != state.size()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  if (std::abs(state.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("expectation: state is not normalized");
  }
  return sandwich(state, m, state);
}

}  // namespace thermoweak
