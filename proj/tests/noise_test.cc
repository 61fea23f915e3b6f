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

#include <gtest/gtest.h>

#include <random>

#include <autoqec/error_structure.hpp>
#include <autoqec/noise.hpp>

#include "oracles.hpp"

namespace autoqec {
namespace {

RealMatrix correlated_matrix() {
  RealMatrix c(3, 3);
  c << 1.6, -0.4, -0.4, -0.4, 0.7, -0.5, -0.4, -0.5, 0.7;
  return c;
}

TEST(NoiseModelTest, LocalDephasingIsSingleSiteZ) {
  const NoiseModel m = local_dephasing(3, 0.1);
  ASSERT_EQ(m.ops.size(), 3u);
  EXPECT_EQ(m.dim(), 8);
  EXPECT_DOUBLE_EQ(m.kappa, 0.1);
  for (int q = 1; q <= 3; ++q)
    EXPECT_LT(max_abs(Operator(m.ops[static_cast<size_t>(q - 1)] - pauli_on('Z', q, 3))), 1e-12);
}

TEST(NoiseModelTest, LocalBitflipIsSingleSiteX) {
  const NoiseModel m = local_bitflip(2, 0.1);
  ASSERT_EQ(m.ops.size(), 2u);
  EXPECT_LT(max_abs(Operator(m.ops[0] - pauli_string("XI"))), 1e-12);
  EXPECT_LT(max_abs(Operator(m.ops[1] - pauli_string("IX"))), 1e-12);
}

TEST(NoiseModelTest, CorrelatedOperatorsHaveGramMatrixC) {
  // With L_i = sum_j D_ij Z_j and Tr[Z_a Z_b] = d delta_ab, the pairwise
  // Hilbert-Schmidt overlaps recover the correlation matrix regardless of
  // which factorization D was chosen.
  const RealMatrix c = correlated_matrix();
  const NoiseModel m = correlated_dephasing(c, 0.1);
  ASSERT_EQ(m.ops.size(), 3u);
  const double d = 8.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Complex overlap = (m.ops[static_cast<size_t>(i)].adjoint() *
                               m.ops[static_cast<size_t>(j)])
                                  .trace();
      EXPECT_NEAR(overlap.real() / d, c(i, j), 1e-9) << i << "," << j;
      EXPECT_NEAR(overlap.imag(), 0.0, 1e-9);
    }
}

TEST(NoiseModelTest, CorrelatedDissipatorMatchesDoubleSumForm) {
  // The C-form dissipator sum_ij C_ij (Z_i rho Z_j - {Z_i Z_j, rho}/2) must
  // equal the factored D-form sum_i D[L_i] rho for random states.
  const RealMatrix c = correlated_matrix();
  const NoiseModel m = correlated_dephasing(c, 0.1);
  std::vector<Operator> z;
  for (int q = 1; q <= 3; ++q) z.push_back(pauli_on('Z', q, 3));

  std::mt19937 rng(11);
  for (int rep = 0; rep < 4; ++rep) {
    const Operator rho = oracles::random_density(8, rng);
    Operator c_form = Operator::Zero(8, 8);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Operator zij = z[static_cast<size_t>(j)] * z[static_cast<size_t>(i)];
        c_form += c(i, j) * (z[static_cast<size_t>(i)] * rho * z[static_cast<size_t>(j)] -
                             0.5 * (zij * rho + rho * zij));
      }
    Operator d_form = Operator::Zero(8, 8);
    for (const auto& l : m.ops)
      d_form += l * rho * l.adjoint() -
                0.5 * (l.adjoint() * l * rho + rho * l.adjoint() * l);
    EXPECT_LT(max_abs(Operator(c_form - d_form)), 1e-9);
  }
}

TEST(NoiseModelTest, IdentityCorrelationReducesToLocalDephasing) {
  const NoiseModel m = correlated_dephasing(RealMatrix::Identity(2, 2), 0.3);
  ASSERT_EQ(m.ops.size(), 2u);
  EXPECT_LT(max_abs(Operator(m.ops[0] - pauli_string("ZI"))), 1e-12);
  EXPECT_LT(max_abs(Operator(m.ops[1] - pauli_string("IZ"))), 1e-12);
}

TEST(NoiseModelTest, AncillaQubitsStayNoiseless) {
  const NoiseModel m = correlated_dephasing(RealMatrix::Identity(1, 1), 0.1, 2);
  ASSERT_EQ(m.ops.size(), 1u);
  EXPECT_EQ(m.dim(), 4);
  EXPECT_LT(max_abs(Operator(m.ops[0] - pauli_string("ZI"))), 1e-12);
}

TEST(NoiseModelTest, ZeroRowsOfTheRootAreDropped) {
  RealMatrix c(2, 2);
  c << 1.0, 0.0, 0.0, 0.0;
  const NoiseModel m = correlated_dephasing(c, 0.1);
  ASSERT_EQ(m.ops.size(), 1u);
  EXPECT_LT(max_abs(Operator(m.ops[0] - pauli_string("ZI"))), 1e-12);
}

TEST(NoiseModelTest, RejectsIndefiniteCorrelation) {
  RealMatrix c(2, 2);
  c << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
  EXPECT_THROW(correlated_dephasing(c, 0.1), std::domain_error);
}

TEST(NoiseModelTest, CommutesWithHamiltonianPerOperator) {
  Operator h = Operator::Zero(8, 8);
  for (int q = 1; q <= 3; ++q) h += pauli_on('Z', q, 3);

  const auto z_flags = commutes_with_hamiltonian(local_dephasing(3, 0.1), h);
  for (bool f : z_flags) EXPECT_TRUE(f);

  const auto x_flags = commutes_with_hamiltonian(local_bitflip(3, 0.1), h);
  for (bool f : x_flags) EXPECT_FALSE(f);

  EXPECT_THROW(commutes_with_hamiltonian(local_dephasing(2, 0.1), h), std::invalid_argument);
}

TEST(ErrorStructureTest, LocalDephasingFirstOrder) {
  const NoiseModel m = local_dephasing(3, 0.1);
  const ErrorStructure errs = build_error_structure(m, 1);
  ASSERT_EQ(errs.levels.size(), 2u);
  EXPECT_EQ(errs.levels[0].size(), 1u);
  EXPECT_EQ(errs.levels[1].size(), 3u);
  EXPECT_EQ(errs.pooled_size(), 4);
  // B = sum Z_i^2 = 3 I.
  EXPECT_LT(max_abs(Operator(errs.no_jump - 3.0 * Operator::Identity(8, 8))), 1e-12);
}

TEST(ErrorStructureTest, RecursionArity) {
  // |E[n]| before deduplication is m |E[n-1]| + |E[n-2]| for m operators.
  const NoiseModel m = local_bitflip(2, 0.1);
  const ErrorStructure errs = build_error_structure(m, 3);
  ASSERT_EQ(errs.levels.size(), 4u);
  EXPECT_EQ(errs.levels[0].size(), 1u);
  EXPECT_EQ(errs.levels[1].size(), 2u);
  EXPECT_EQ(errs.levels[2].size(), 2u * 2u + 1u);
  EXPECT_EQ(errs.levels[3].size(), 2u * 5u + 2u);
}

TEST(ErrorStructureTest, ProductProvenanceCoversAllPairs) {
  const NoiseModel m = local_dephasing(2, 0.1);
  const ErrorStructure errs = build_error_structure(m, 1);
  const int pooled = errs.pooled_size();
  ASSERT_EQ(errs.product_count(), pooled * pooled);
  for (const auto& prod : errs.products) {
    const Operator expect = errs.pooled[static_cast<size_t>(prod.a)].adjoint() *
                            errs.pooled[static_cast<size_t>(prod.b)];
    EXPECT_LT(max_abs(Operator(prod.op - expect)), 1e-12);
  }
}

TEST(ErrorStructureTest, DeduplicationCollapsesPhaseEquivalentProducts) {
  // For a single Z operator, E[~1] = {I, Z} and every product is I or Z up
  // to sign; exactly two classes survive.
  std::vector<Operator> ops = {pauli_string("Z")};
  const ErrorStructure errs = build_error_structure(lindblad_list(ops, 0.1), 1);
  EXPECT_EQ(errs.pooled_size(), 2);
  EXPECT_EQ(errs.product_count(), 4);
  EXPECT_EQ(errs.unique_product_count(), 2);
}

TEST(ErrorStructureTest, PhaseNormalizationCatchesComplexDuplicates) {
  std::vector<Operator> ops = {pauli_string("X"), Complex(0.0, 1.0) * pauli_string("X")};
  const ErrorStructure errs = build_error_structure(lindblad_list(ops, 0.1), 1);
  // Pooled set {I, X, iX}; all nine products are phase multiples of I or X.
  EXPECT_EQ(errs.unique_product_count(), 2);
}

TEST(ErrorStructureTest, UniqueProductsAreClosedUnderAdjoint) {
  const NoiseModel m = correlated_dephasing(correlated_matrix(), 0.1);
  const ErrorStructure errs = build_error_structure(m, 1);
  for (int k = 0; k < errs.unique_product_count(); ++k) {
    const Operator adj = errs.unique_product(k).adjoint();
    const Operator target = detail::phase_normalized(adj);
    bool found = false;
    for (int l = 0; l < errs.unique_product_count() && !found; ++l)
      found = max_abs(Operator(detail::phase_normalized(errs.unique_product(l)) - target)) < 1e-9;
    EXPECT_TRUE(found) << "adjoint of product " << k << " missing from the unique set";
  }
}

TEST(ErrorStructureTest, SecondOrderDephasingContainsPairProducts) {
  const NoiseModel m = local_dephasing(5, 0.1);
  const ErrorStructure errs = build_error_structure(m, 2);
  // E[2] = {Z_a Z_b} plus the B E[0] branch; B acts as 5 I.
  ASSERT_EQ(errs.levels[2].size(), 26u);
  EXPECT_LT(max_abs(Operator(errs.levels[2].back() - 5.0 * Operator::Identity(32, 32))), 1e-12);
  // Every unique product of pooled elements is a product of at most four
  // Pauli-Z factors, hence diagonal with +-1-like entries times a constant.
  for (int k = 0; k < errs.unique_product_count(); ++k) {
    const Operator& p = errs.unique_product(k);
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      for (Eigen::Index j = 0; j < p.cols(); ++j)
        if (i != j) EXPECT_LT(std::abs(p(i, j)), 1e-12);
  }
}

TEST(ErrorStructureTest, RequiresPositiveOrder) {
  const NoiseModel m = local_dephasing(2, 0.1);
  EXPECT_THROW(build_error_structure(m, 0), std::invalid_argument);
}

}  // namespace
}  // namespace autoqec
