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

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "autoqec/error_structure.hpp"
#include "autoqec/simplex.hpp"
#include "autoqec/spectrum.hpp"

namespace autoqec {

// Code-candidate constraint matrix for an eigenvalue-group pair (i, j).
// Row k covers the (deduplicated) error product K_k; column l is
//   <h_i^(l)| K_k |h_i^(l)>            for l <  N_i,
//  -<h_j^(l-N_i)| K_k |h_j^(l-N_i)>    for l >= N_i.
// A nonnegative, per-block-normalized null vector p of this matrix yields
// codewords mu_0, mu_1 with matched error signatures across the two groups.
struct AMatrix {
  Eigen::MatrixXcd entries;
  int group_i = 0;
  int group_j = 0;
  int n_i = 0;
  int n_j = 0;
};

inline AMatrix build_a_matrix(const HamiltonianSpectrum& spec, const ErrorStructure& errs, int i,
                              int j) {
  if (i == j) throw std::invalid_argument("build_a_matrix: group indices must differ");
  if (i < 0 || j < 0 || i >= spec.group_count() || j >= spec.group_count())
    throw std::invalid_argument("build_a_matrix: group index out of range");
  if (errs.dim != spec.dim) throw std::invalid_argument("build_a_matrix: dimension mismatch");

  const auto& gi = spec.groups[static_cast<size_t>(i)];
  const auto& gj = spec.groups[static_cast<size_t>(j)];
  AMatrix a;
  a.group_i = i;
  a.group_j = j;
  a.n_i = gi.size();
  a.n_j = gj.size();
  a.entries.resize(errs.unique_product_count(), a.n_i + a.n_j);
  for (int k = 0; k < errs.unique_product_count(); ++k) {
    const Operator& kk = errs.unique_product(k);
    for (int l = 0; l < a.n_i; ++l) {
      const Ket& v = gi.vectors[static_cast<size_t>(l)];
      a.entries(k, l) = v.dot(kk * v);
    }
    for (int l = 0; l < a.n_j; ++l) {
      const Ket& v = gj.vectors[static_cast<size_t>(l)];
      a.entries(k, a.n_i + l) = -v.dot(kk * v);
    }
  }
  return a;
}

struct LpSolution {
  RealVector p_i;
  RealVector p_j;
  double condition_estimate = 0.0;
  bool condition_flagged = false;  // estimate above 1e12; solved anyway
  double max_residual = 0.0;       // verified |A p| over all rows, unscaled
  int simplex_iterations = 0;
};

namespace detail {

// Real constraint rows for the feasibility LP: Re and Im of every A row,
// plus the two block-normalization rows.
inline void assemble_lp_rows(const AMatrix& a, std::vector<std::vector<double>>& rows,
                             std::vector<double>& rhs) {
  const int n = a.n_i + a.n_j;
  rows.clear();
  rhs.clear();
  for (Eigen::Index k = 0; k < a.entries.rows(); ++k) {
    std::vector<double> re(static_cast<size_t>(n)), im(static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) {
      re[static_cast<size_t>(l)] = a.entries(k, l).real();
      im[static_cast<size_t>(l)] = a.entries(k, l).imag();
    }
    rows.push_back(std::move(re));
    rhs.push_back(0.0);
    rows.push_back(std::move(im));
    rhs.push_back(0.0);
  }
  std::vector<double> block_i(static_cast<size_t>(n), 0.0), block_j(static_cast<size_t>(n), 0.0);
  for (int l = 0; l < a.n_i; ++l) block_i[static_cast<size_t>(l)] = 1.0;
  for (int l = 0; l < a.n_j; ++l) block_j[static_cast<size_t>(a.n_i + l)] = 1.0;
  rows.push_back(std::move(block_i));
  rhs.push_back(1.0);
  rows.push_back(std::move(block_j));
  rhs.push_back(1.0);
}

// Spectral condition estimate of the row-scaled, null-row-pruned constraint
// matrix: ratio of the largest singular value to the smallest one that is
// numerically nonzero (above sigma_max * 1e-13).  Redundant rows therefore
// do not inflate the estimate; genuine near-degeneracy does.
inline double lp_condition_estimate(const std::vector<std::vector<double>>& rows) {
  std::vector<const std::vector<double>*> kept;
  for (const auto& r : rows) {
    double s = 0.0;
    for (double v : r) s = std::max(s, std::abs(v));
    if (s > 1e-12) kept.push_back(&r);
  }
  if (kept.empty()) return 1.0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(kept.size()),
                    static_cast<Eigen::Index>(kept.front()->size()));
  for (size_t i = 0; i < kept.size(); ++i) {
    double s = 0.0;
    for (double v : *kept[i]) s = std::max(s, std::abs(v));
    for (size_t j = 0; j < kept[i]->size(); ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*kept[i])[j] / s;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (smax <= 0.0) return 1.0;
  double smin = smax;
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > smax * 1e-13) smin = sv(k);
  return smax / smin;
}

}  // namespace detail

// Decides feasibility of the code LP for one A-matrix and, when feasible,
// returns the probability blocks.  The returned solution is re-verified
// against the unscaled constraints (|A p| <= 1e-8 per row, block sums within
// 1e-8); negative entries above -1e-12 are clipped to zero.  A solver claim
// that fails verification is reported as infeasible.
inline std::optional<LpSolution> lp_feasible(const AMatrix& a) {
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  detail::assemble_lp_rows(a, rows, rhs);

  LpSolution sol;
  sol.condition_estimate = detail::lp_condition_estimate(rows);
  sol.condition_flagged = sol.condition_estimate > 1e12;

  SimplexOptions<double> opt;
  opt.pivot_tol = 1e-9;
  opt.prune_tol = 1e-12;
  const auto r = simplex_feasible<double>(rows, rhs, opt);
  if (!r.feasible) return std::nullopt;
  sol.simplex_iterations = r.iterations;

  std::vector<double> x = r.x;
  for (double& v : x) {
    if (v < 0.0) {
      if (v < -1e-12) return std::nullopt;  // not a valid probability vector
      v = 0.0;
    }
  }

  const int n = a.n_i + a.n_j;
  double sum_i = 0.0, sum_j = 0.0;
  for (int l = 0; l < a.n_i; ++l) sum_i += x[static_cast<size_t>(l)];
  for (int l = 0; l < a.n_j; ++l) sum_j += x[static_cast<size_t>(a.n_i + l)];
  if (std::abs(sum_i - 1.0) > 1e-8 || std::abs(sum_j - 1.0) > 1e-8) return std::nullopt;
  for (Eigen::Index k = 0; k < a.entries.rows(); ++k) {
    Complex acc(0.0, 0.0);
    for (int l = 0; l < n; ++l) acc += a.entries(k, l) * x[static_cast<size_t>(l)];
    sol.max_residual = std::max(sol.max_residual, std::abs(acc));
  }
  if (sol.max_residual > 1e-8) return std::nullopt;

  sol.p_i.resize(a.n_i);
  sol.p_j.resize(a.n_j);
  for (int l = 0; l < a.n_i; ++l) sol.p_i(l) = x[static_cast<size_t>(l)];
  for (int l = 0; l < a.n_j; ++l) sol.p_j(l) = x[static_cast<size_t>(a.n_i + l)];
  return sol;
}

// A two-dimensional code built on an eigenvalue-group pair: codewords are
// probability mixtures of the group eigenvectors,
//   mu_0 = sum_k sqrt(p_i[k]) |h_i^(k)>,   mu_1 = sum_k sqrt(p_j[k]) |h_j^(k)>.
struct CodePair {
  int group_i = 0;
  int group_j = 0;
  double h_i = 0.0;
  double h_j = 0.0;
  RealVector p_i;
  RealVector p_j;
  Ket mu0;
  Ket mu1;
  double logical_gap = 0.0;  // |h_i - h_j|
  LpSolution lp;

  Operator code_projector() const { return mu0 * mu0.adjoint() + mu1 * mu1.adjoint(); }
  Operator projected_hamiltonian() const {
    return h_i * (mu0 * mu0.adjoint()) + h_j * (mu1 * mu1.adjoint());
  }
};

struct PairAttempt {
  int group_i = 0;
  int group_j = 0;
  double gap = 0.0;
  bool feasible = false;
  bool condition_flagged = false;
};

namespace detail {

inline Ket mix_group(const EigenvalueGroup& g, const RealVector& p) {
  Ket v = Ket::Zero(g.vectors.front().size());
  for (int k = 0; k < g.size(); ++k) v += std::sqrt(std::max(0.0, p(k))) * g.vectors[static_cast<size_t>(k)];
  return v;
}

}  // namespace detail

// Searches eigenvalue-group pairs for a feasible code, preferring large
// logical gaps: pairs are visited in descending |h_i - h_j|, ties broken by
// ascending (i, j), and the first feasible pair wins.  Returns nullopt when
// every pair is infeasible (or fewer than two groups exist).
inline std::optional<CodePair> search_code(const HamiltonianSpectrum& spec,
                                           const ErrorStructure& errs,
                                           std::vector<PairAttempt>* attempts = nullptr) {
  if (attempts) attempts->clear();
  const int g = spec.group_count();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < g; ++i)
    for (int j = i + 1; j < g; ++j) pairs.emplace_back(i, j);
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    const double ga = std::abs(spec.groups[static_cast<size_t>(a.first)].value -
                               spec.groups[static_cast<size_t>(a.second)].value);
    const double gb = std::abs(spec.groups[static_cast<size_t>(b.first)].value -
                               spec.groups[static_cast<size_t>(b.second)].value);
    if (ga != gb) return ga > gb;
    return a < b;
  });

  for (const auto& [i, j] : pairs) {
    const AMatrix a = build_a_matrix(spec, errs, i, j);
    const auto sol = lp_feasible(a);
    if (attempts) {
      PairAttempt at;
      at.group_i = i;
      at.group_j = j;
      at.gap = std::abs(spec.groups[static_cast<size_t>(i)].value -
                        spec.groups[static_cast<size_t>(j)].value);
      at.feasible = sol.has_value();
      at.condition_flagged = sol ? sol->condition_flagged : false;
      attempts->push_back(at);
    }
    if (!sol) continue;

    CodePair c;
    c.group_i = i;
    c.group_j = j;
    c.h_i = spec.groups[static_cast<size_t>(i)].value;
    c.h_j = spec.groups[static_cast<size_t>(j)].value;
    c.p_i = sol->p_i;
    c.p_j = sol->p_j;
    c.mu0 = detail::mix_group(spec.groups[static_cast<size_t>(i)], sol->p_i);
    c.mu1 = detail::mix_group(spec.groups[static_cast<size_t>(j)], sol->p_j);
    c.logical_gap = std::abs(c.h_i - c.h_j);
    c.lp = *sol;
    return c;
  }
  return std::nullopt;
}

}  // namespace autoqec
