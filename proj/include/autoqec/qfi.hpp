// Copyright 2026 The autoqec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <stdexcept>

#include "autoqec/core.hpp"
#include "autoqec/spectrum.hpp"

namespace autoqec {

// Noiseless benchmark: unitary evolution under w H for time t gives
//   F(t) = 4 t^2 ( tr[H^2 rho0] - tr[H rho0]^2 ),
// the Heisenberg-scaling quantum Fisher information of the initial state.
inline double ideal_qfi(const Operator& h, const Operator& rho0, double t) {
  if (h.rows() != rho0.rows() || h.cols() != rho0.cols())
    throw std::invalid_argument("ideal_qfi: dimension mismatch");
  const double h1 = (h * rho0).trace().real();
  const double h2 = (h * h * rho0).trace().real();
  return 4.0 * t * t * (h2 - h1 * h1);
}

// Quantum Fisher information via the symmetric logarithmic derivative, from
// a state and its parameter derivative:
//   F = 2 sum_{j,k : p_j + p_k > cutoff} |<j| drho |k>|^2 / (p_j + p_k).
// Eigenvalue pairs whose population sum is at or below the cutoff carry no
// extractable information at this precision and are skipped.
inline double qfi_sld(const Operator& rho, const Operator& drho, double cutoff = 1e-10) {
  if (rho.rows() != drho.rows() || rho.cols() != drho.cols())
    throw std::invalid_argument("qfi_sld: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(rho));
  if (es.info() != Eigen::Success) throw std::runtime_error("qfi_sld: eigendecomposition failed");
  const RealVector p = es.eigenvalues();
  const Operator d = es.eigenvectors().adjoint() * hermitize(drho) * es.eigenvectors();
  double f = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j)
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      const double denom = p(j) + p(k);
      if (denom <= cutoff) continue;
      f += 2.0 * std::norm(d(j, k)) / denom;
    }
  return f;
}

}  // namespace autoqec
