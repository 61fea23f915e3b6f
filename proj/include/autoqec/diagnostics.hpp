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

#include <stdexcept>
#include <vector>

#include "autoqec/code_search.hpp"
#include "autoqec/correctable_basis.hpp"
#include "autoqec/error_structure.hpp"

namespace autoqec {

// Knill-Laflamme check over the deduplicated error products:
//   <mu_a| K_k |mu_b> = sigma_k delta_ab  with sigma_k = <mu_0| K_k |mu_0>.
struct KlReport {
  bool satisfied = false;
  std::vector<Complex> sigma;   // per unique product
  double max_offdiag = 0.0;     // max |<mu_0|K|mu_1>|
  double max_diag_gap = 0.0;    // max |<mu_1|K|mu_1> - sigma_k|
  double tol = 0.0;
};

inline KlReport check_knill_laflamme(const Ket& mu0, const Ket& mu1, const ErrorStructure& errs,
                                     double tol = 1e-9) {
  if (mu0.size() != errs.dim || mu1.size() != errs.dim)
    throw std::invalid_argument("check_knill_laflamme: codeword dimension mismatch");
  KlReport rep;
  rep.tol = tol;
  rep.sigma.reserve(static_cast<size_t>(errs.unique_product_count()));
  for (int k = 0; k < errs.unique_product_count(); ++k) {
    const Operator& kk = errs.unique_product(k);
    const Complex s00 = mu0.dot(kk * mu0);
    const Complex s11 = mu1.dot(kk * mu1);
    const Complex s01 = mu0.dot(kk * mu1);
    rep.sigma.push_back(s00);
    rep.max_offdiag = std::max(rep.max_offdiag, std::abs(s01));
    rep.max_diag_gap = std::max(rep.max_diag_gap, std::abs(s11 - s00));
  }
  rep.satisfied = rep.max_offdiag <= tol && rep.max_diag_gap <= tol;
  return rep;
}

inline KlReport check_knill_laflamme(const CodePair& code, const ErrorStructure& errs,
                                     double tol = 1e-9) {
  return check_knill_laflamme(code.mu0, code.mu1, errs, tol);
}

// Hamiltonian-not-in-Lindblad-span test: decomposes H = H_par + H_perp
// against span{ E_a^dag E_b : E_a, E_b in E[0] + E[1] } = span{ I, L_a,
// L_a^dag, L_a^dag L_b } by least squares on vectorized operators.  The
// condition holds (useful codes can exist) iff the orthogonal remainder is
// nonzero, ||H_perp||_F > 1e-8.
struct HnlsReport {
  bool satisfied = false;
  double perp_norm = 0.0;  // Frobenius norm of H_perp
  Operator h_parallel;
  Operator h_perp;
};

inline HnlsReport check_hnls(const Operator& h, const ErrorStructure& errs) {
  if (h.rows() != errs.dim || h.cols() != errs.dim)
    throw std::invalid_argument("check_hnls: dimension mismatch between H and error structure");
  const Eigen::Index d = errs.dim;

  // First-order products only: pooled levels 0 and 1.
  std::vector<Operator> ops;
  {
    std::vector<const Operator*> first_order;
    for (int k = 0; k < errs.pooled_size(); ++k)
      if (errs.pooled_level[static_cast<size_t>(k)] <= 1)
        first_order.push_back(&errs.pooled[static_cast<size_t>(k)]);
    for (const Operator* a : first_order)
      for (const Operator* b : first_order) ops.push_back(a->adjoint() * (*b));
  }

  Eigen::MatrixXcd m(d * d, static_cast<Eigen::Index>(ops.size()));
  for (size_t c = 0; c < ops.size(); ++c)
    m.col(static_cast<Eigen::Index>(c)) = ops[c].reshaped();
  const Eigen::VectorXcd target = h.reshaped();
  const Eigen::VectorXcd coeff = m.completeOrthogonalDecomposition().solve(target);
  const Eigen::VectorXcd par = m * coeff;

  HnlsReport rep;
  rep.h_parallel = par.reshaped(d, d);
  rep.h_perp = h - rep.h_parallel;
  rep.perp_norm = rep.h_perp.norm();
  rep.satisfied = rep.perp_norm > 1e-8;
  return rep;
}

// Structural sufficient conditions for distortion-free protection:
//   P1: every pooled error operator up to order c commutes with H,
//   P2: H preserves each order subspace, [P^(n), H] = 0 for n = 0..c.
struct P1P2Report {
  bool p1 = false;
  bool p2 = false;
  double max_p1_violation = 0.0;
  double max_p2_violation = 0.0;
  double tol = 0.0;
};

inline P1P2Report check_p1_p2(const Operator& h, const ErrorStructure& errs,
                              const CorrectableBasis& basis, double tol = 1e-10) {
  if (h.rows() != errs.dim || basis.dim != errs.dim)
    throw std::invalid_argument("check_p1_p2: dimension mismatch");
  P1P2Report rep;
  rep.tol = tol;
  for (const Operator& e : errs.pooled)
    rep.max_p1_violation = std::max(rep.max_p1_violation, max_abs(Operator(h * e - e * h)));
  for (int n = 0; n <= basis.order; ++n) {
    const Operator p = basis.order_projector(n);
    rep.max_p2_violation = std::max(rep.max_p2_violation, max_abs(Operator(p * h - h * p)));
  }
  rep.p1 = rep.max_p1_violation <= tol;
  rep.p2 = rep.max_p2_violation <= tol;
  return rep;
}

}  // namespace autoqec
