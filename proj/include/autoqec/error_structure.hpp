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
#include <utility>
#include <vector>

#include "autoqec/noise.hpp"

namespace autoqec {

// One product K = E_a^dag E_b with the indices (into the pooled error list)
// it came from.  Multiple (a, b) pairs can map to the same operator up to a
// global phase; `duplicate_of` then points at the first occurrence.
struct ErrorProduct {
  Operator op;
  int a = 0;
  int b = 0;
  int duplicate_of = -1;  // -1 when this product is the first of its class
};

// The order-c error structure of a noise model:
//
//   E[0]   = { I }
//   E[1]   = { L_a }
//   E[n]   = { L_a E : E in E[n-1] } union { B E : E in E[n-2] },  n >= 2
//   B      = sum_a L_a^dag L_a            (the no-jump generator)
//   pooled = E[0] + E[1] + ... + E[c]     (level order, then operator order)
//
// plus every pairwise product E_a^dag E_b with provenance, deduplicated up
// to a global phase.
struct ErrorStructure {
  std::vector<std::vector<Operator>> levels;  // levels[n] = E[n], n = 0..c
  Operator no_jump;                           // B
  std::vector<Operator> pooled;               // E[~c]
  std::vector<int> pooled_level;              // level of pooled[k]
  std::vector<ErrorProduct> products;         // all |pooled|^2 products
  std::vector<int> unique_products;           // indices of first-of-class products
  int order = 0;                              // c
  Eigen::Index dim = 0;

  int pooled_size() const { return static_cast<int>(pooled.size()); }
  int product_count() const { return static_cast<int>(products.size()); }
  int unique_product_count() const { return static_cast<int>(unique_products.size()); }

  const Operator& unique_product(int k) const {
    return products[static_cast<size_t>(unique_products[static_cast<size_t>(k)])].op;
  }
};

namespace detail {

// Scales a matrix by the inverse phase of its first entry (column-major
// scan) of magnitude above 1e-12, making phase-equivalent matrices
// bit-comparable.  Zero matrices are returned unchanged.
inline Operator phase_normalized(const Operator& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > 1e-12) return m * (std::conj(m(i, j)) / std::abs(m(i, j)));
  return m;
}

}  // namespace detail

inline ErrorStructure build_error_structure(const NoiseModel& model, int order) {
  if (order < 1) throw std::invalid_argument("build_error_structure: order must be >= 1");
  if (model.ops.empty()) throw std::invalid_argument("build_error_structure: noise model has no jump operators");
  const Eigen::Index d = model.dim();

  ErrorStructure es;
  es.order = order;
  es.dim = d;
  es.no_jump = Operator::Zero(d, d);
  for (const auto& l : model.ops) es.no_jump += l.adjoint() * l;

  es.levels.resize(static_cast<size_t>(order) + 1);
  es.levels[0] = {Operator::Identity(d, d)};
  es.levels[1] = model.ops;
  for (int n = 2; n <= order; ++n) {
    auto& level = es.levels[static_cast<size_t>(n)];
    for (const auto& l : model.ops)
      for (const auto& e : es.levels[static_cast<size_t>(n - 1)]) level.push_back(l * e);
    for (const auto& e : es.levels[static_cast<size_t>(n - 2)]) level.push_back(es.no_jump * e);
  }

  for (int n = 0; n <= order; ++n)
    for (auto& e : es.levels[static_cast<size_t>(n)]) {
      es.pooled.push_back(e);
      es.pooled_level.push_back(n);
    }

  const int ne = es.pooled_size();
  es.products.reserve(static_cast<size_t>(ne) * static_cast<size_t>(ne));
  std::vector<Operator> unique_normalized;
  std::vector<double> unique_norms;
  for (int a = 0; a < ne; ++a) {
    for (int b = 0; b < ne; ++b) {
      ErrorProduct p;
      p.a = a;
      p.b = b;
      p.op = es.pooled[static_cast<size_t>(a)].adjoint() * es.pooled[static_cast<size_t>(b)];
      const Operator norm = detail::phase_normalized(p.op);
      const double fro = norm.norm();
      for (size_t u = 0; u < unique_normalized.size(); ++u) {
        if (std::abs(fro - unique_norms[u]) > 1e-9) continue;
        if (max_abs(Operator(norm - unique_normalized[u])) < 1e-12) {
          p.duplicate_of = es.unique_products[u];
          break;
        }
      }
      if (p.duplicate_of < 0) {
        es.unique_products.push_back(static_cast<int>(es.products.size()));
        unique_normalized.push_back(norm);
        unique_norms.push_back(fro);
      }
      es.products.push_back(std::move(p));
    }
  }
  return es;
}

}  // namespace autoqec
