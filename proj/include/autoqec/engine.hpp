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

#include "autoqec/correctable_basis.hpp"

namespace autoqec {

// One engineered jump operator, stored in low-rank form
//   L = sum_s |target_s><source_s|
// so the simulator never has to materialize the dense matrix.  Correction
// operators map the i-th error vector of each codeword back to that
// codeword; reset operators empty one residual direction into a code-space
// state.
struct EngineeredOp {
  enum class Kind { correction, reset };
  Kind kind = Kind::correction;
  int order = 0;        // error order n for corrections, 0 for resets
  int source_index = 0; // i_n for corrections, q for resets
  std::vector<Ket> targets;
  std::vector<Ket> sources;

  Operator matrix() const {
    Operator m = Operator::Zero(targets.front().size(), targets.front().size());
    for (size_t s = 0; s < targets.size(); ++s) m += targets[s] * sources[s].adjoint();
    return m;
  }
};

// The full engineered-dissipation scheme: one correction operator per error
// direction (order n, index i_n), acting jointly on both codewords, plus one
// reset operator per residual direction.  All ops enter the master equation
// at the common rate R * kappa.
struct AutoQecScheme {
  CorrectableBasis basis;
  std::vector<EngineeredOp> ops;
  std::vector<Ket> reset_targets;  // one per residual direction
  double rate_ratio = 0.0;         // R
  double kappa = 0.0;

  int order() const { return basis.order; }
  double engineered_rate() const { return rate_ratio * kappa; }
};

// Builds the scheme from a correctable basis.
//
//   L^(n)_{i} = sum_alpha |mu_alpha><mu^(n)_{alpha,i}|       (corrections)
//   L^(res)_q = |Phi_q><phi_q|                               (resets)
//
// Reset targets default to the balanced code state (mu_0 + mu_1)/sqrt(2).
// Custom targets must be normalized, live in the code space, and number
// either one (broadcast to every residual direction) or exactly q_max.
inline AutoQecScheme build_engineered_dissipation(const CorrectableBasis& basis, double rate_ratio,
                                                  double kappa,
                                                  const std::vector<Ket>& reset_targets = {}) {
  AutoQecScheme scheme;
  scheme.basis = basis;
  scheme.rate_ratio = rate_ratio;
  scheme.kappa = kappa;

  for (int n = 1; n <= basis.order; ++n) {
    const auto& level0 = basis.error_bases[0][static_cast<size_t>(n - 1)];
    const auto& level1 = basis.error_bases[1][static_cast<size_t>(n - 1)];
    for (size_t i = 0; i < level0.size(); ++i) {
      EngineeredOp op;
      op.kind = EngineeredOp::Kind::correction;
      op.order = n;
      op.source_index = static_cast<int>(i);
      op.targets = {basis.code_basis[0], basis.code_basis[1]};
      op.sources = {level0[i], level1[i]};
      scheme.ops.push_back(std::move(op));
    }
  }

  if (basis.q_max > 0) {
    std::vector<Ket> targets;
    if (reset_targets.empty()) {
      Ket phi = (basis.code_basis[0] + basis.code_basis[1]) / std::sqrt(2.0);
      targets.assign(static_cast<size_t>(basis.q_max), phi);
    } else if (reset_targets.size() == 1) {
      targets.assign(static_cast<size_t>(basis.q_max), reset_targets.front());
    } else if (static_cast<int>(reset_targets.size()) == basis.q_max) {
      targets = reset_targets;
    } else {
      throw std::invalid_argument(
          "build_engineered_dissipation: expected 1 or " + std::to_string(basis.q_max) +
          " reset targets, got " + std::to_string(reset_targets.size()));
    }
    const Operator pc = basis.code_projector();
    for (const Ket& phi : targets) {
      if (phi.size() != basis.dim)
        throw std::invalid_argument("build_engineered_dissipation: reset target dimension mismatch");
      if (std::abs(phi.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("build_engineered_dissipation: reset target must be normalized");
      if ((phi - pc * phi).norm() > 1e-9)
        throw std::invalid_argument(
            "build_engineered_dissipation: reset target lies outside the code space");
    }
    for (int q = 0; q < basis.q_max; ++q) {
      EngineeredOp op;
      op.kind = EngineeredOp::Kind::reset;
      op.order = 0;
      op.source_index = q;
      op.targets = {targets[static_cast<size_t>(q)]};
      op.sources = {basis.residual_basis[static_cast<size_t>(q)]};
      scheme.ops.push_back(std::move(op));
    }
    scheme.reset_targets = std::move(targets);
  }
  return scheme;
}

// The CPTP projection channel associated with a scheme:
//   P[rho] = P_C rho P_C + sum_n,i L^(n)_i rho L^(n)_i^dag
//                        + sum_q L^(res)_q rho L^(res)_q^dag.
// It is trace preserving and idempotent, and fixes exactly the states
// supported on the code space.
class CptpProjector {
 public:
  explicit CptpProjector(const AutoQecScheme& scheme)
      : code_projector_(scheme.basis.code_projector()), ops_(scheme.ops) {}

  Operator operator()(const Operator& rho) const {
    Operator out = code_projector_ * rho * code_projector_;
    for (const auto& op : ops_) {
      const size_t r = op.targets.size();
      for (size_t s = 0; s < r; ++s)
        for (size_t t = 0; t < r; ++t) {
          const Complex amp = op.sources[s].dot(rho * op.sources[t]);
          if (amp != Complex(0.0, 0.0)) out += amp * (op.targets[s] * op.targets[t].adjoint());
        }
    }
    return out;
  }

 private:
  Operator code_projector_;
  std::vector<EngineeredOp> ops_;
};

inline CptpProjector cptp_projector(const AutoQecScheme& scheme) { return CptpProjector(scheme); }

// Checks that H acts diagonally on the corrected error spaces with the
// logical eigenvalues, up to an arbitrary action on the residual space:
//   H ~ sum_alpha h_alpha ( |mu_alpha><mu_alpha|
//         + sum_{n,i} |mu^(n)_{alpha,i}><mu^(n)_{alpha,i}| ) + P_res H P_res.
struct BlockFormReport {
  bool passes = false;
  double residual = 0.0;  // max-norm gap between H and the block model
  double tol = 0.0;
};

inline BlockFormReport verify_hamiltonian_block_form(const Operator& h,
                                                     const CorrectableBasis& basis, double h0,
                                                     double h1, double tol = 1e-9) {
  if (h.rows() != basis.dim || h.cols() != basis.dim)
    throw std::invalid_argument("verify_hamiltonian_block_form: dimension mismatch");
  Operator model = Operator::Zero(basis.dim, basis.dim);
  const double hval[2] = {h0, h1};
  for (int alpha = 0; alpha < 2; ++alpha) {
    const Ket& mu = basis.code_basis[static_cast<size_t>(alpha)];
    model += hval[alpha] * (mu * mu.adjoint());
    for (int n = 1; n <= basis.order; ++n)
      for (const auto& v : basis.error_bases[static_cast<size_t>(alpha)][static_cast<size_t>(n - 1)])
        model += hval[alpha] * (v * v.adjoint());
  }
  const Operator pres = basis.residual_projector();
  model += pres * h * pres;

  BlockFormReport rep;
  rep.tol = tol;
  rep.residual = max_abs(Operator(h - model));
  rep.passes = rep.residual <= tol;
  return rep;
}

inline BlockFormReport verify_hamiltonian_block_form(const Operator& h, const CodePair& code,
                                                     const CorrectableBasis& basis,
                                                     double tol = 1e-9) {
  return verify_hamiltonian_block_form(h, basis, code.h_i, code.h_j, tol);
}

}  // namespace autoqec
