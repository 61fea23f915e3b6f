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

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace autoqec {

// Feasibility test for { x : A x = b, x >= 0 } by phase-1 primal simplex
// with Bland's rule (anti-cycling).  Deliberately dependency-free and
// templated on the scalar type: instantiate with double for production and
// with an exact rational type (zero tolerances) to act as a referee in
// tests.
template <typename Scalar>
struct SimplexOptions {
  Scalar pivot_tol{};  // entries/reduced costs below this count as zero
  Scalar prune_tol{};  // rows with all |entries| below this are dropped
};

template <typename Scalar>
struct SimplexResult {
  bool feasible = false;
  std::vector<Scalar> x;  // a feasible point when feasible == true
  int iterations = 0;
  int rows_used = 0;  // rows remaining after pruning and deduplication
};

template <typename Scalar>
SimplexResult<Scalar> simplex_feasible(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b,
                                       const SimplexOptions<Scalar>& opt) {
  using std::abs;
  const size_t n = a.empty() ? 0 : a.front().size();
  if (a.size() != b.size()) throw std::invalid_argument("simplex_feasible: row/rhs count mismatch");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("simplex_feasible: ragged constraint matrix");

  SimplexResult<Scalar> res;
  res.x.assign(n, Scalar(0));

  // --- preprocessing: scale rows, drop null rows, deduplicate, flip signs ---
  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  for (size_t i = 0; i < a.size(); ++i) {
    Scalar scale(0);
    for (const Scalar& v : a[i])
      if (abs(v) > scale) scale = abs(v);
    if (!(scale > opt.prune_tol)) {
      if (abs(b[i]) > opt.prune_tol) return res;  // 0 = nonzero: infeasible
      continue;                                   // genuinely empty row
    }
    std::vector<Scalar> row = a[i];
    Scalar rb = b[i];
    for (Scalar& v : row) v = v / scale;
    rb = rb / scale;
    if (rb < Scalar(0)) {
      for (Scalar& v : row) v = -v;
      rb = -rb;
    }
    bool dup = false;
    for (size_t r = 0; r < rows.size() && !dup; ++r) {
      if (!(abs(rhs[r] - rb) <= opt.prune_tol)) continue;
      dup = true;
      for (size_t j = 0; j < n; ++j)
        if (!(abs(rows[r][j] - row[j]) <= opt.prune_tol)) {
          dup = false;
          break;
        }
    }
    if (dup) continue;
    rows.push_back(std::move(row));
    rhs.push_back(rb);
  }

  const size_t m = rows.size();
  res.rows_used = static_cast<int>(m);
  if (m == 0) {
    res.feasible = true;  // no constraints left; x = 0 works
    return res;
  }

  // --- phase-1 tableau: minimize the sum of one artificial per row ---
  // T holds the structural columns plus the rhs; artificials are implicit
  // through `basis` (values n..n+m-1) and are never re-entered.
  std::vector<std::vector<Scalar>>& t = rows;
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  const int max_iterations = 2000 * static_cast<int>(m + n + 1);
  while (true) {
    if (++res.iterations > max_iterations)
      throw std::runtime_error("simplex_feasible: iteration limit exceeded");

    // Reduced cost of structural column j under the phase-1 objective is
    // -sum of T(i, j) over rows whose basic variable is artificial.
    size_t enter = n;
    for (size_t j = 0; j < n; ++j) {
      bool basic = false;
      for (size_t i = 0; i < m && !basic; ++i) basic = (basis[i] == j);
      if (basic) continue;
      Scalar price(0);
      for (size_t i = 0; i < m; ++i)
        if (basis[i] >= n) price += t[i][j];
      if (price > opt.pivot_tol) {
        enter = j;  // Bland: first (smallest-index) improving column
        break;
      }
    }
    if (enter == n) break;  // optimal

    // Ratio test over positive pivot entries; ties break toward the
    // smallest basic-variable index (Bland).
    size_t leave = m;
    for (size_t i = 0; i < m; ++i) {
      if (!(t[i][enter] > opt.pivot_tol)) continue;
      if (leave == m) {
        leave = i;
        continue;
      }
      const Scalar lhs = rhs[i] * t[leave][enter];
      const Scalar cur = rhs[leave] * t[i][enter];
      if (lhs < cur || (lhs == cur && basis[i] < basis[leave])) leave = i;
    }
    if (leave == m) {
      // The phase-1 objective is unbounded below only if something is wrong:
      // it is bounded by zero by construction.
      throw std::runtime_error("simplex_feasible: internal error, unbounded phase-1 objective");
    }

    // Pivot: normalize the leaving row, eliminate the column elsewhere.
    const Scalar piv = t[leave][enter];
    for (size_t j = 0; j < n; ++j) t[leave][j] = t[leave][j] / piv;
    rhs[leave] = rhs[leave] / piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const Scalar f = t[i][enter];
      if (f == Scalar(0)) continue;
      for (size_t j = 0; j < n; ++j) t[i][j] = t[i][j] - f * t[leave][j];
      rhs[i] = rhs[i] - f * rhs[leave];
    }
    basis[leave] = enter;
  }

  Scalar artificial_mass(0);
  for (size_t i = 0; i < m; ++i)
    if (basis[i] >= n) artificial_mass += abs(rhs[i]);
  if (artificial_mass > opt.pivot_tol) return res;  // infeasible

  res.feasible = true;
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = rhs[i];
  return res;
}

}  // namespace autoqec
