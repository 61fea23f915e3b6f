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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoqec/core.hpp"

namespace autoqec {

// A Markovian noise model: jump operators L_a entering the master equation
// as kappa * sum_a D[L_a].  Operators are kept unnormalized; all rate
// information lives in kappa.
struct NoiseModel {
  std::vector<Operator> ops;
  double kappa = 0.0;
  int n_qubits = 0;  // total register size, including noiseless ancillas
  std::string kind = "custom";
  std::optional<RealMatrix> correlation;    // C, when built from correlations
  std::optional<RealMatrix> factorization;  // D with D^T D = C

  Eigen::Index dim() const { return ops.empty() ? 0 : ops.front().rows(); }
};

// Builds jump operators from an explicit list.
inline NoiseModel lindblad_list(std::vector<Operator> ops, double kappa) {
  if (ops.empty()) throw std::invalid_argument("lindblad_list: at least one jump operator required");
  const Eigen::Index d = ops.front().rows();
  for (const auto& l : ops)
    if (l.rows() != d || l.cols() != d)
      throw std::invalid_argument("lindblad_list: jump operators must be square and equal-sized");
  NoiseModel m;
  m.ops = std::move(ops);
  m.kappa = kappa;
  m.n_qubits = qubit_count(d);
  return m;
}

// Correlated dephasing from a real symmetric PSD correlation matrix C:
// factor C = D^T D with D = sqrt(C) and set L_i = sum_j D_ij Z_j.  When
// total_qubits exceeds the number of rows of C, the remaining (trailing)
// qubits are noiseless ancillas and the Z_j act on the first rows(C) sites.
// Rows of D that vanish produce identically zero operators and are dropped.
inline NoiseModel correlated_dephasing(const RealMatrix& c, double kappa, int total_qubits = 0) {
  const int n = static_cast<int>(c.rows());
  if (n == 0) throw std::invalid_argument("correlated_dephasing: correlation matrix must be non-empty");
  const int total = std::max(total_qubits, n);
  const RealMatrix d = matrix_sqrt_psd(c);

  NoiseModel m;
  m.kappa = kappa;
  m.n_qubits = total;
  m.kind = "correlated-dephasing";
  m.correlation = c;
  m.factorization = d;
  const Eigen::Index dim = Eigen::Index{1} << total;
  for (int i = 0; i < n; ++i) {
    Operator l = Operator::Zero(dim, dim);
    for (int j = 0; j < n; ++j) {
      if (d(i, j) == 0.0) continue;
      l += d(i, j) * pauli_on('Z', j + 1, total);
    }
    if (max_abs(l) > 1e-14) m.ops.push_back(std::move(l));
  }
  if (m.ops.empty()) throw std::invalid_argument("correlated_dephasing: correlation matrix produced no jump operators");
  return m;
}

// Independent single-site dephasing, L_i = Z_i: the C = identity special
// case of correlated dephasing.
inline NoiseModel local_dephasing(int n_qubits, double kappa, int total_qubits = 0) {
  if (n_qubits <= 0) throw std::invalid_argument("local_dephasing: qubit count must be positive");
  NoiseModel m = correlated_dephasing(RealMatrix::Identity(n_qubits, n_qubits), kappa, total_qubits);
  m.kind = "local-dephasing";
  return m;
}

// Independent single-site bit flips, L_i = X_i.
inline NoiseModel local_bitflip(int n_qubits, double kappa, int total_qubits = 0) {
  if (n_qubits <= 0) throw std::invalid_argument("local_bitflip: qubit count must be positive");
  const int total = std::max(total_qubits, n_qubits);
  NoiseModel m;
  m.kappa = kappa;
  m.n_qubits = total;
  m.kind = "local-bitflip";
  for (int i = 0; i < n_qubits; ++i) m.ops.push_back(pauli_on('X', i + 1, total));
  return m;
}

// Per-operator test of [H, L_a] = 0 in the max norm.
inline std::vector<bool> commutes_with_hamiltonian(const NoiseModel& m, const Operator& h,
                                                   double tol = 1e-10) {
  if (h.rows() != m.dim() || h.cols() != m.dim())
    throw std::invalid_argument("commutes_with_hamiltonian: dimension mismatch between H and noise model");
  std::vector<bool> out;
  out.reserve(m.ops.size());
  for (const auto& l : m.ops) out.push_back(max_abs(Operator(h * l - l * h)) <= tol);
  return out;
}

}  // namespace autoqec
