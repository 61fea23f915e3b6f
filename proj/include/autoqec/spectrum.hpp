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
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoqec/core.hpp"

namespace autoqec {

// Eigendecomposition of a Hermitian matrix with eigenvalues sorted in
// descending order.  Returns (eigenvalues, eigenvectors-as-columns).
inline std::pair<RealVector, Operator> hermitian_eigendecomposition(const Operator& a) {
  if (!is_hermitian(a)) throw std::invalid_argument("hermitian_eigendecomposition: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(a));
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigendecomposition: eigendecomposition failed");
  const Eigen::Index d = a.rows();
  RealVector vals(d);
  Operator vecs(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    vals(k) = es.eigenvalues()(d - 1 - k);
    vecs.col(k) = es.eigenvectors().col(d - 1 - k);
  }
  return {vals, vecs};
}

struct EigenvalueGroup {
  double value = 0.0;           // representative eigenvalue h_i
  std::vector<Ket> vectors;     // orthonormal eigenvectors |h_i^(k)>
  int size() const { return static_cast<int>(vectors.size()); }
};

struct HamiltonianSpectrum {
  Operator h;                          // the decomposed operator
  std::vector<EigenvalueGroup> groups; // descending by eigenvalue
  int dim = 0;

  int group_count() const { return static_cast<int>(groups.size()); }

  Operator reconstruct() const {
    Operator out = Operator::Zero(dim, dim);
    for (const auto& g : groups)
      for (const auto& v : g.vectors) out += g.value * (v * v.adjoint());
    return out;
  }
};

namespace detail {

// Kets are defined up to a global phase; pin it so the first component with
// magnitude above 1e-12 is real and positive.  Makes degenerate-subspace
// output reproducible across runs and platforms.
inline void fix_ket_phase(Ket& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > 1e-12) {
      v *= std::conj(v(k)) / std::abs(v(k));
      return;
    }
  }
}

}  // namespace detail

// Groups the spectrum of a Hermitian operator into (near-)degenerate
// eigenspaces.  Two eigenvalues are merged when
// |a - b| <= tol * max(1, |a|); a spectrum where some eigenvalue sits within
// tolerance of two groups that are themselves separated is rejected, since
// no consistent grouping exists at the requested tolerance.
//
// Ordering is deterministic: groups descend by eigenvalue; inside a group,
// vectors of a diagonal operator are exact computational-basis kets in
// ascending basis-index order, and general operators keep the solver's
// (phase-pinned) order.
inline HamiltonianSpectrum group_spectrum(const Operator& h, double tol = 1e-9) {
  if (h.rows() != h.cols() || h.rows() == 0)
    throw std::invalid_argument("group_spectrum: matrix must be square and non-empty");
  if (!is_hermitian(h)) throw std::invalid_argument("group_spectrum: matrix is not Hermitian");
  const Eigen::Index d = h.rows();

  // Collect eigenpairs, descending.
  std::vector<double> vals;
  std::vector<Ket> vecs;
  vals.reserve(static_cast<size_t>(d));
  vecs.reserve(static_cast<size_t>(d));

  double off = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (i != j) off = std::max(off, std::abs(h(i, j)));

  if (off < 1e-12) {
    // Diagonal operator: eigenvectors are computational-basis kets.  Sort by
    // eigenvalue descending, breaking ties by ascending basis index.
    std::vector<Eigen::Index> order(static_cast<size_t>(d));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return h(a, a).real() > h(b, b).real();
    });
    for (Eigen::Index idx : order) {
      vals.push_back(h(idx, idx).real());
      vecs.push_back(basis_ket(static_cast<int>(d), static_cast<int>(idx)));
    }
  } else {
    auto [lam, v] = hermitian_eigendecomposition(h);
    for (Eigen::Index k = 0; k < d; ++k) {
      vals.push_back(lam(k));
      Ket col = v.col(k);
      detail::fix_ket_phase(col);
      vecs.push_back(std::move(col));
    }
  }

  HamiltonianSpectrum spec;
  spec.h = h;
  spec.dim = static_cast<int>(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double v = vals[static_cast<size_t>(k)];
    bool joined = false;
    if (!spec.groups.empty()) {
      double rep = spec.groups.back().value;
      if (std::abs(v - rep) <= tol * std::max(1.0, std::abs(rep)) ||
          std::abs(v - rep) <= tol * std::max(1.0, std::abs(v))) {
        spec.groups.back().vectors.push_back(vecs[static_cast<size_t>(k)]);
        joined = true;
      }
    }
    if (!joined) {
      EigenvalueGroup g;
      g.value = v;
      g.vectors.push_back(vecs[static_cast<size_t>(k)]);
      spec.groups.push_back(std::move(g));
    }
  }

  // Ambiguity check: every eigenvalue must be within tolerance of exactly
  // one group representative.
  for (Eigen::Index k = 0; k < d; ++k) {
    const double v = vals[static_cast<size_t>(k)];
    int hits = 0;
    for (const auto& g : spec.groups)
      if (std::abs(v - g.value) <= tol * std::max(1.0, std::abs(v))) ++hits;
    if (hits > 1)
      throw std::runtime_error(
          "group_spectrum: ambiguous eigenvalue clustering at tolerance " + std::to_string(tol) +
          " (eigenvalue " + std::to_string(v) + " is within tolerance of " + std::to_string(hits) +
          " groups); no consistent grouping exists");
  }

  int total = 0;
  for (const auto& g : spec.groups) total += g.size();
  if (total != spec.dim) throw std::runtime_error("group_spectrum: internal error, group sizes do not sum to dimension");
  return spec;
}

}  // namespace autoqec
