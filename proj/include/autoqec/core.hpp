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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace autoqec {

using Complex = std::complex<double>;
using Ket = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr int kMaxQubits = 12;

// Largest absolute entry of a matrix expression; the max-norm used by most
// numerical contracts in this library.
inline double max_abs(const Operator& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

inline double max_abs(const RealMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Operator& a, double tol = 1e-10) {
  if (a.rows() != a.cols()) return false;
  return max_abs(Operator(a - a.adjoint())) <= tol;
}

// Symmetric part (A + A†)/2; used by the integrator to suppress round-off
// drift away from the Hermitian manifold.
inline Operator hermitize(const Operator& a) { return 0.5 * (a + a.adjoint()); }

inline Ket basis_ket(int dim, int index) {
  if (dim <= 0) throw std::invalid_argument("basis_ket: dimension must be positive");
  if (index < 0 || index >= dim) throw std::invalid_argument("basis_ket: index out of range");
  Ket v = Ket::Zero(dim);
  v(index) = Complex(1.0, 0.0);
  return v;
}

inline Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Ket kron(const Ket& a, const Ket& b) {
  Ket out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Operator pauli_i() { return Operator::Identity(2, 2); }

inline Operator pauli_x() {
  Operator x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

inline Operator pauli_y() {
  Operator y(2, 2);
  y << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return y;
}

inline Operator pauli_z() {
  Operator z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

// Tensor product of single-qubit Paulis, e.g. "IZZ" for I (x) Z (x) Z.  The
// first label acts on qubit 1, which owns the most significant bit of the
// computational-basis index: |b1 b2 ... bn> maps to index sum_k b_k 2^(n-k).
inline Operator pauli_string(const std::string& labels) {
  if (labels.empty()) throw std::invalid_argument("pauli_string: requires at least one qubit label");
  if (static_cast<int>(labels.size()) > kMaxQubits)
    throw std::invalid_argument("pauli_string: at most " + std::to_string(kMaxQubits) + " qubits supported");
  Operator out = Operator::Identity(1, 1);
  for (char c : labels) {
    switch (c) {
      case 'I': out = kron(out, pauli_i()); break;
      case 'X': out = kron(out, pauli_x()); break;
      case 'Y': out = kron(out, pauli_y()); break;
      case 'Z': out = kron(out, pauli_z()); break;
      default:
        throw std::invalid_argument(std::string("pauli_string: unknown Pauli label '") + c + "'");
    }
  }
  return out;
}

// Single-qubit Pauli acting on qubit `site` (1-based) of an n-qubit register.
inline Operator pauli_on(char label, int site, int n_qubits) {
  if (site < 1 || site > n_qubits) throw std::invalid_argument("pauli_on: site out of range");
  std::string labels(static_cast<size_t>(n_qubits), 'I');
  labels[static_cast<size_t>(site - 1)] = label;
  return pauli_string(labels);
}

// Product state from a label string over {0, 1, +, -}, e.g. "0+1".
inline Ket product_state(const std::string& labels) {
  if (labels.empty()) throw std::invalid_argument("product_state: requires at least one qubit label");
  const double s = 1.0 / std::sqrt(2.0);
  Ket out = Ket::Ones(1);
  for (char c : labels) {
    Ket q(2);
    switch (c) {
      case '0': q << 1, 0; break;
      case '1': q << 0, 1; break;
      case '+': q << s, s; break;
      case '-': q << s, -s; break;
      default:
        throw std::invalid_argument(std::string("product_state: unknown state label '") + c + "'");
    }
    out = kron(out, q);
  }
  return out;
}

inline int qubit_count(Eigen::Index dim) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d *= 2;
    ++n;
  }
  if (d != dim) throw std::invalid_argument("qubit_count: dimension is not a power of two");
  return n;
}

// Symmetric PSD square root D of a real symmetric matrix C, i.e. D^T D = C.
// Eigenvalues in [-1e-10, 0) are treated as round-off and clipped to zero;
// anything more negative is rejected.
inline RealMatrix matrix_sqrt_psd(const RealMatrix& c) {
  if (c.rows() != c.cols()) throw std::invalid_argument("matrix_sqrt_psd: matrix must be square");
  if (max_abs(RealMatrix(c - c.transpose())) > 1e-10)
    throw std::invalid_argument("matrix_sqrt_psd: matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(c);
  if (es.info() != Eigen::Success) throw std::runtime_error("matrix_sqrt_psd: eigendecomposition failed");
  RealVector lam = es.eigenvalues();
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    if (lam(k) < -1e-10) throw std::domain_error("correlation matrix not PSD");
    if (lam(k) < 0.0) lam(k) = 0.0;
  }
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

// Fixed-width decimal formatting at 12 significant digits, shared by every
// CSV and JSON writer so that repeated runs are byte-identical.
inline std::string format_sig12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

}  // namespace autoqec
