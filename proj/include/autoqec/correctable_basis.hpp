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
#include <string>
#include <vector>

#include "autoqec/code_search.hpp"
#include "autoqec/error_structure.hpp"

namespace autoqec {

// Orthonormal decomposition of the Hilbert space induced by a code pair and
// an order-c error structure:
//
//   span{mu_0, mu_1}                                  the code space
//   span{ |mu^(n)_{alpha, i}> }  for n = 1..c          corrected error spaces
//   everything else                                    the residual space
//
// The error vectors are produced by Gram-Schmidt on { E mu_alpha } in level
// order, then operator order, against everything kept so far for the same
// codeword.  Vectors with post-orthogonalization norm below 1e-10 are
// dropped as linearly dependent; the per-level kept counts p_n must agree
// between the two codewords (they do whenever the Knill-Laflamme conditions
// hold, since both Gram matrices are then identical).
struct CorrectableBasis {
  std::vector<Ket> code_basis;                            // {mu_0, mu_1}
  std::vector<std::vector<std::vector<Ket>>> error_bases; // [alpha][n-1][i_n]
  std::vector<std::vector<std::vector<int>>> source_ops;  // index into levels[n] per kept vector
  std::vector<Ket> residual_basis;
  std::vector<int> p_n;  // kept dimension per order n = 1..c
  int order = 0;
  Eigen::Index dim = 0;
  int q_max = 0;  // residual dimension

  int correctable_dim() const {
    int s = 1;
    for (int p : p_n) s += p;
    return 2 * s;
  }

  Operator code_projector() const {
    Operator p = Operator::Zero(dim, dim);
    for (const auto& v : code_basis) p += v * v.adjoint();
    return p;
  }

  // Projector onto the order-n subspace; n = 0 is the code space itself.
  Operator order_projector(int n) const {
    if (n < 0 || n > order) throw std::invalid_argument("order_projector: order out of range");
    if (n == 0) return code_projector();
    Operator p = Operator::Zero(dim, dim);
    for (const auto& per_alpha : error_bases)
      for (const auto& v : per_alpha[static_cast<size_t>(n - 1)]) p += v * v.adjoint();
    return p;
  }

  Operator residual_projector() const {
    Operator p = Operator::Zero(dim, dim);
    for (const auto& v : residual_basis) p += v * v.adjoint();
    return p;
  }
};

namespace detail {

// Modified Gram-Schmidt with one re-orthogonalization sweep.  Returns the
// post-orthogonalization norm; `v` is left unnormalized.
inline double orthogonalize_against(Ket& v, const std::vector<const Ket*>& span) {
  for (int pass = 0; pass < 2; ++pass)
    for (const Ket* u : span) v -= (*u).dot(v) * (*u);
  return v.norm();
}

}  // namespace detail

inline CorrectableBasis build_correctable_basis(const Ket& mu0, const Ket& mu1,
                                                const ErrorStructure& errs, int order) {
  if (order < 1 || order > errs.order)
    throw std::invalid_argument("build_correctable_basis: order must be in [1, errs.order]");
  const Eigen::Index d = errs.dim;
  if (mu0.size() != d || mu1.size() != d)
    throw std::invalid_argument("build_correctable_basis: codeword dimension mismatch");
  if (std::abs(mu0.norm() - 1.0) > 1e-9 || std::abs(mu1.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("build_correctable_basis: codewords must be normalized");
  if (std::abs(mu0.dot(mu1)) > 1e-9)
    throw std::invalid_argument("build_correctable_basis: codewords must be orthogonal");

  CorrectableBasis basis;
  basis.order = order;
  basis.dim = d;
  basis.code_basis = {mu0, mu1};
  basis.error_bases.assign(2, {});
  basis.source_ops.assign(2, {});

  for (int alpha = 0; alpha < 2; ++alpha) {
    const Ket& mu = basis.code_basis[static_cast<size_t>(alpha)];
    std::vector<const Ket*> kept{&mu};
    auto& per_alpha = basis.error_bases[static_cast<size_t>(alpha)];
    auto& src_alpha = basis.source_ops[static_cast<size_t>(alpha)];
    per_alpha.resize(static_cast<size_t>(order));
    src_alpha.resize(static_cast<size_t>(order));
    for (int n = 1; n <= order; ++n) {
      const auto& level = errs.levels[static_cast<size_t>(n)];
      // Reserve so that `kept` can hold stable pointers into the vector.
      per_alpha[static_cast<size_t>(n - 1)].reserve(level.size());
      for (size_t e = 0; e < level.size(); ++e) {
        Ket v = level[e] * mu;
        if (detail::orthogonalize_against(v, kept) <= 1e-10) continue;
        v.normalize();
        // Keep the phase inherited from E|mu>: the correction channels pair
        // the two codeword blocks index by index, and per-vector phase
        // canonicalization here would silently turn a paired channel into a
        // logical error.  Matched Gram matrices (Knill-Laflamme) make the
        // inherited phases consistent across blocks.
        per_alpha[static_cast<size_t>(n - 1)].push_back(v);
        src_alpha[static_cast<size_t>(n - 1)].push_back(static_cast<int>(e));
        kept.push_back(&per_alpha[static_cast<size_t>(n - 1)].back());
      }
    }
  }

  for (int n = 1; n <= order; ++n) {
    const int p0 = static_cast<int>(basis.error_bases[0][static_cast<size_t>(n - 1)].size());
    const int p1 = static_cast<int>(basis.error_bases[1][static_cast<size_t>(n - 1)].size());
    if (p0 != p1 || basis.source_ops[0][static_cast<size_t>(n - 1)] !=
                        basis.source_ops[1][static_cast<size_t>(n - 1)])
      throw std::runtime_error(
          "build_correctable_basis: error-space dimensions differ between codewords at order " +
          std::to_string(n) + " (" + std::to_string(p0) + " vs " + std::to_string(p1) +
          "); the code does not satisfy the Knill-Laflamme conditions");
    basis.p_n.push_back(p0);
  }

  // The corrected spaces of the two codewords must be mutually orthogonal;
  // overlap means error events are not distinguishable by codeword.
  {
    std::vector<const Ket*> s0{&basis.code_basis[0]}, s1{&basis.code_basis[1]};
    for (int n = 1; n <= order; ++n) {
      for (const auto& v : basis.error_bases[0][static_cast<size_t>(n - 1)]) s0.push_back(&v);
      for (const auto& v : basis.error_bases[1][static_cast<size_t>(n - 1)]) s1.push_back(&v);
    }
    for (const Ket* u : s0)
      for (const Ket* v : s1)
        if (std::abs((*u).dot(*v)) > 1e-8)
          throw std::runtime_error(
              "build_correctable_basis: corrected spaces of the two codewords overlap "
              "(max inner product above 1e-8)");

    // Residual completion: Gram-Schmidt the computational basis against the
    // accumulated span, keeping survivors in ascending basis-index order.
    std::vector<const Ket*> all = s0;
    all.insert(all.end(), s1.begin(), s1.end());
    basis.residual_basis.reserve(static_cast<size_t>(d));
    for (Eigen::Index k = 0; k < d; ++k) {
      Ket v = basis_ket(static_cast<int>(d), static_cast<int>(k));
      if (detail::orthogonalize_against(v, all) <= 1e-10) continue;
      v.normalize();
      detail::fix_ket_phase(v);
      basis.residual_basis.push_back(std::move(v));
      all.push_back(&basis.residual_basis.back());
    }
  }
  basis.q_max = static_cast<int>(basis.residual_basis.size());

  if (basis.correctable_dim() + basis.q_max != static_cast<int>(d))
    throw std::runtime_error(
        "build_correctable_basis: basis does not complete the space (correctable " +
        std::to_string(basis.correctable_dim()) + " + residual " + std::to_string(basis.q_max) +
        " != dimension " + std::to_string(d) + ")");
  return basis;
}

inline CorrectableBasis build_correctable_basis(const CodePair& code, const ErrorStructure& errs,
                                                int order) {
  return build_correctable_basis(code.mu0, code.mu1, errs, order);
}

}  // namespace autoqec
