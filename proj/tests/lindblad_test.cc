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

#include <cmath>
#include <random>
#include <sstream>

#include <autoqec/correctable_basis.hpp>
#include <autoqec/engine.hpp>
#include <autoqec/lindblad.hpp>
#include <autoqec/noise.hpp>

#include "oracles.hpp"

namespace autoqec {
namespace {

RealMatrix correlated_matrix() {
  RealMatrix c(3, 3);
  c << 1.6, -0.4, -0.4, -0.4, 0.7, -0.5, -0.4, -0.5, 0.7;
  return c;
}

Operator sum_z(int n) {
  Operator h = Operator::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (int q = 1; q <= n; ++q) h += pauli_on('Z', q, n);
  return h;
}

Ket correlated_mu(int alpha) {
  Ket v = Ket::Zero(8);
  if (alpha == 0) {
    v(4) = std::sqrt(0.4);
    v(2) = std::sqrt(0.3);
    v(1) = std::sqrt(0.3);
  } else {
    v(3) = std::sqrt(0.4);
    v(5) = std::sqrt(0.3);
    v(6) = std::sqrt(0.3);
  }
  return v;
}

AutoQecScheme correlated_scheme(double r_ratio, double kappa) {
  const NoiseModel model = correlated_dephasing(correlated_matrix(), kappa);
  const ErrorStructure errs = build_error_structure(model, 1);
  const CorrectableBasis basis = build_correctable_basis(correlated_mu(0), correlated_mu(1), errs, 1);
  return build_engineered_dissipation(basis, r_ratio, kappa);
}

TEST(DissipatorTest, HandComputedCases) {
  const Operator z = pauli_z();
  const Ket plus = product_state("+");
  const Operator rho_plus = plus * plus.adjoint();
  Operator expect(2, 2);
  expect << 0.0, -1.0, -1.0, 0.0;
  EXPECT_LT(max_abs(Operator(dissipator(z, rho_plus) - expect)), 1e-14);

  EXPECT_LT(max_abs(dissipator(Operator::Identity(2, 2), rho_plus)), 1e-14);

  const Operator rho_zero = basis_ket(2, 0) * basis_ket(2, 0).adjoint();
  EXPECT_LT(max_abs(dissipator(z, rho_zero)), 1e-14);

  EXPECT_THROW(dissipator(Operator::Identity(2, 2), Operator::Identity(4, 4)),
               std::invalid_argument);
}

TEST(RhsTest, TraceFreeForAllGeneratorTerms) {
  const NoiseModel model = correlated_dephasing(correlated_matrix(), 0.1);
  const AutoQecScheme scheme = correlated_scheme(100.0, 0.1);
  SimulationConfig cfg;
  cfg.w = 1.0;
  cfg.kappa = 0.1;
  cfg.R = 100.0;

  std::mt19937 rng(3);
  for (int rep = 0; rep < 4; ++rep) {
    const Operator rho = oracles::random_density(8, rng);
    const Operator out = lindblad_rhs(rho, sum_z(3), model, &scheme, cfg);
    EXPECT_LT(std::abs(out.trace()), 1e-12);
    EXPECT_TRUE(is_hermitian(out, 1e-12));
  }
}

TEST(RhsTest, CompiledFormMatchesDefinitionOnEveryBranch) {
  std::mt19937 rng(21);
  SimulationConfig cfg;
  cfg.w = 0.9;
  cfg.kappa = 0.25;
  cfg.R = 50.0;

  // Branch 1: diagonal Hamiltonian and diagonal jumps (coefficient path).
  {
    const NoiseModel model = correlated_dephasing(correlated_matrix(), cfg.kappa);
    detail::CompiledRhs compiled(sum_z(3), model, nullptr, cfg);
    for (int rep = 0; rep < 3; ++rep) {
      const Operator rho = oracles::random_density(8, rng);
      Operator out(8, 8);
      compiled(rho, out);
      EXPECT_LT(max_abs(Operator(out - lindblad_rhs(rho, sum_z(3), model, nullptr, cfg))), 1e-12);
    }
  }
  // Branch 2: dense Hamiltonian, dense jumps.
  {
    const Operator h = sum_z(2) + 0.4 * pauli_string("XX");
    std::vector<Operator> ops = {pauli_string("XI"), pauli_string("IY")};
    const NoiseModel model = lindblad_list(ops, cfg.kappa);
    detail::CompiledRhs compiled(h, model, nullptr, cfg);
    for (int rep = 0; rep < 3; ++rep) {
      const Operator rho = oracles::random_density(4, rng);
      Operator out(4, 4);
      compiled(rho, out);
      EXPECT_LT(max_abs(Operator(out - lindblad_rhs(rho, h, model, nullptr, cfg))), 1e-12);
    }
  }
  // Branch 3: engineered low-rank operators on top of diagonal noise.
  {
    const NoiseModel model = correlated_dephasing(correlated_matrix(), cfg.kappa);
    const AutoQecScheme scheme = correlated_scheme(cfg.R, cfg.kappa);
    detail::CompiledRhs compiled(sum_z(3), model, &scheme, cfg);
    for (int rep = 0; rep < 3; ++rep) {
      const Operator rho = oracles::random_density(8, rng);
      Operator out(8, 8);
      compiled(rho, out);
      EXPECT_LT(max_abs(Operator(out - lindblad_rhs(rho, sum_z(3), model, &scheme, cfg))), 1e-12);
    }
  }
}

TEST(IntegrateTest, UnitaryEvolutionMatchesClosedForm) {
  const Operator h = sum_z(3);
  const Ket ghz = (basis_ket(8, 0) + basis_ket(8, 7)) / std::sqrt(2.0);
  const Operator rho0 = ghz * ghz.adjoint();
  std::vector<Operator> ident = {Operator::Identity(8, 8)};
  const NoiseModel none = lindblad_list(ident, 0.0);

  SimulationConfig cfg;
  cfg.w = 1.3;
  cfg.kappa = 0.0;
  cfg.t_max = 1.0;
  cfg.dt = 1e-3;
  const Trajectory traj = integrate(rho0, h, none, nullptr, cfg);

  const Complex phase = std::exp(Complex(0.0, -cfg.w * cfg.t_max * 6.0));  // gap 3 - (-3)
  Operator expect = rho0;
  expect(0, 7) *= phase;
  expect(7, 0) *= std::conj(phase);
  EXPECT_LT(max_abs(Operator(traj.states.back() - expect)), 1e-8);
}

TEST(IntegrateTest, DephasingCoherenceDecaysAnalytically) {
  const Operator h = pauli_z();
  const NoiseModel model = local_dephasing(1, 0.3);
  const Ket plus = product_state("+");

  SimulationConfig cfg;
  cfg.w = 0.7;
  cfg.kappa = 0.3;
  cfg.t_max = 1.0;
  cfg.dt = 1e-3;
  const Trajectory traj = integrate(plus * plus.adjoint(), h, model, nullptr, cfg);

  // d rho01/dt = (-2 i w - 2 kappa) rho01.
  const Complex expect = 0.5 * std::exp(Complex(-2.0 * cfg.kappa, -2.0 * cfg.w) * cfg.t_max);
  EXPECT_LT(std::abs(traj.states.back()(0, 1) - expect), 1e-9);
}

TEST(IntegrateTest, MatchesMatrixExponentialWithoutScheme) {
  const Operator h = sum_z(2) + 0.4 * pauli_string("XX");
  std::vector<Operator> ops = {pauli_string("XI"), pauli_string("IZ")};
  const NoiseModel model = lindblad_list(ops, 0.2);
  const Ket psi0 = product_state("+0");
  const Operator rho0 = psi0 * psi0.adjoint();

  SimulationConfig cfg;
  cfg.w = 1.0;
  cfg.kappa = 0.2;
  cfg.t_max = 0.5;
  cfg.dt = 1e-3;
  const Trajectory traj = integrate(rho0, h, model, nullptr, cfg);

  const Operator liou = oracles::liouvillian(h, cfg.w, oracles::collect_jumps(model, nullptr, cfg.kappa, 0.0));
  const Operator expect = oracles::evolve_expm(liou, rho0, cfg.t_max);
  EXPECT_LT(max_abs(Operator(traj.states.back() - expect)), 1e-8);
}

TEST(IntegrateTest, MatchesMatrixExponentialWithEngineeredScheme) {
  const NoiseModel model = correlated_dephasing(correlated_matrix(), 0.1);
  const AutoQecScheme scheme = correlated_scheme(50.0, 0.1);
  const Ket probe = (correlated_mu(0) + correlated_mu(1)) / std::sqrt(2.0);
  const Operator rho0 = probe * probe.adjoint();

  SimulationConfig cfg;
  cfg.w = 1.0;
  cfg.kappa = 0.1;
  cfg.R = 50.0;
  cfg.t_max = 0.3;
  const Trajectory traj = integrate(rho0, sum_z(3), model, &scheme, cfg);

  const Operator liou =
      oracles::liouvillian(sum_z(3), cfg.w, oracles::collect_jumps(model, &scheme, cfg.kappa, cfg.R));
  const Operator expect = oracles::evolve_expm(liou, rho0, cfg.t_max);
  EXPECT_LT(max_abs(Operator(traj.states.back() - expect)), 1e-7);
}

TEST(IntegrateTest, RelaxesErrorStatesBackToTheCodeSpace) {
  // At R = 1000 the correction rate exceeds the leakage rate by four orders
  // of magnitude, so an error state ends up almost entirely back in the
  // code space; the residual steady-state leakage scales as 1/R.
  const NoiseModel model = correlated_dephasing(correlated_matrix(), 0.1);
  const AutoQecScheme scheme = correlated_scheme(1000.0, 0.1);
  const Ket err = scheme.basis.error_bases[0][0][0];

  SimulationConfig cfg;
  cfg.w = 0.0;
  cfg.kappa = 0.1;
  cfg.R = 1000.0;
  cfg.t_max = 1.0;
  const Trajectory traj = integrate(err * err.adjoint(), sum_z(3), model, &scheme, cfg);

  const Operator pc = scheme.basis.code_projector();
  const double initial = (pc * traj.states.front() * pc).trace().real();
  const double final_pop = (pc * traj.states.back() * pc).trace().real();
  EXPECT_LT(initial, 1e-12);
  EXPECT_GT(final_pop, 0.99);
}

TEST(IntegrateTest, StepHalvingConvergesAtFourthOrder) {
  // Mildly dissipative, non-stiff dynamics with steps coarse enough that
  // the O(dt^4) endpoint error sits far above the roundoff floor; halving
  // the step must then shrink the Richardson difference sixteenfold.
  const NoiseModel model = correlated_dephasing(correlated_matrix(), 0.1);
  const Ket probe = (correlated_mu(0) + correlated_mu(1)) / std::sqrt(2.0);
  const Operator rho0 = probe * probe.adjoint();

  const auto run = [&](double dt) {
    SimulationConfig cfg;
    cfg.w = 1.0;
    cfg.kappa = 0.1;
    cfg.t_max = 0.4;
    cfg.dt = dt;
    return integrate(rho0, sum_z(3), model, nullptr, cfg).states.back();
  };
  const Operator coarse = run(2e-2);
  const Operator mid = run(1e-2);
  const Operator fine = run(5e-3);
  const double e1 = max_abs(Operator(coarse - mid));
  const double e2 = max_abs(Operator(mid - fine));
  ASSERT_GT(e2, 0.0);
  const double ratio = e1 / e2;
  EXPECT_GT(ratio, 8.0);
  EXPECT_LT(ratio, 32.0);
}

TEST(IntegrateTest, FactorizationOfTheCorrelationMatrixIsIrrelevant) {
  const Operator z1 = pauli_on('Z', 1, 3), z2 = pauli_on('Z', 2, 3), z3 = pauli_on('Z', 3, 3);
  std::vector<Operator> displayed = {(2.0 * z1 - z2) / std::sqrt(5.0),
                                     (z2 - z3) / std::sqrt(2.0),
                                     (2.0 * z1 - z3) / std::sqrt(5.0)};
  const NoiseModel m1 = correlated_dephasing(correlated_matrix(), 0.1);
  const NoiseModel m2 = lindblad_list(displayed, 0.1);

  const Ket probe = (correlated_mu(0) + correlated_mu(1)) / std::sqrt(2.0);
  const Operator rho0 = probe * probe.adjoint();
  SimulationConfig cfg;
  cfg.w = 1.0;
  cfg.kappa = 0.1;
  cfg.t_max = 1.0;
  cfg.dt = 1e-3;
  const Trajectory t1 = integrate(rho0, sum_z(3), m1, nullptr, cfg);
  const Trajectory t2 = integrate(rho0, sum_z(3), m2, nullptr, cfg);
  EXPECT_LT(max_abs(Operator(t1.states.back() - t2.states.back())), 1e-8);
}

TEST(IntegrateTest, TraceAndPositivityStayWithinMonitoringBands) {
  const NoiseModel model = correlated_dephasing(correlated_matrix(), 0.1);
  const AutoQecScheme scheme = correlated_scheme(100.0, 0.1);
  const Ket probe = (correlated_mu(0) + correlated_mu(1)) / std::sqrt(2.0);

  SimulationConfig cfg;
  cfg.w = 1.0;
  cfg.kappa = 0.1;
  cfg.R = 100.0;
  cfg.t_max = 2.0;
  const Trajectory traj = integrate(probe * probe.adjoint(), sum_z(3), model, &scheme, cfg);
  for (size_t k = 0; k < traj.times.size(); ++k) {
    EXPECT_LT(traj.trace_error[k], 1e-8);
    EXPECT_GT(traj.min_eigenvalue[k], -1e-7);
  }
  for (size_t k = 1; k < traj.times.size(); ++k) EXPECT_GT(traj.times[k], traj.times[k - 1]);
}

TEST(IntegrateTest, DefaultStepFollowsTheStiffnessPolicy) {
  const NoiseModel model = correlated_dephasing(correlated_matrix(), 0.1);
  SimulationConfig cfg;
  cfg.w = 1.0;
  cfg.kappa = 0.1;
  cfg.R = 400.0;
  double rate = cfg.R * cfg.kappa + std::abs(cfg.w) * max_abs(sum_z(3));
  for (const auto& l : model.ops) rate += cfg.kappa * max_abs(Operator(l.adjoint() * l));
  EXPECT_NEAR(default_dt(sum_z(3), model, cfg), std::min(1e-3, 0.02 / rate), 1e-15);

  // Slow dynamics cap at 1e-3.
  SimulationConfig slow;
  slow.w = 0.01;
  slow.kappa = 0.0;
  EXPECT_DOUBLE_EQ(default_dt(pauli_z(), local_dephasing(1, 0.0), slow), 1e-3);
}

TEST(IntegrateTest, AbortsWithActionableMessageWhenUnstable) {
  const NoiseModel model = correlated_dephasing(correlated_matrix(), 0.1);
  const AutoQecScheme scheme = correlated_scheme(100.0, 0.1);
  const Ket probe = (correlated_mu(0) + correlated_mu(1)) / std::sqrt(2.0);

  SimulationConfig cfg;
  cfg.w = 1.0;
  cfg.kappa = 0.1;
  cfg.R = 100.0;
  cfg.t_max = 5.0;
  cfg.dt = 0.5;  // grossly under-resolves the engineered rate R kappa = 10
  cfg.record_every = 1;
  try {
    integrate(probe * probe.adjoint(), sum_z(3), model, &scheme, cfg);
    FAIL() << "expected IntegratorError";
  } catch (const IntegratorError& e) {
    EXPECT_NE(std::string(e.what()).find("integration unstable, reduce dt"), std::string::npos);
  }
}

TEST(IntegrateTest, RejectsNonDensityInitialStates) {
  const NoiseModel model = local_dephasing(1, 0.1);
  SimulationConfig cfg;
  cfg.kappa = 0.1;
  cfg.t_max = 1.0;

  Operator not_normalized = 2.0 * basis_ket(2, 0) * basis_ket(2, 0).adjoint();
  EXPECT_THROW(integrate(not_normalized, pauli_z(), model, nullptr, cfg), std::invalid_argument);

  Operator not_hermitian(2, 2);
  not_hermitian << 1.0, 1.0, 0.0, 0.0;
  EXPECT_THROW(integrate(not_hermitian, pauli_z(), model, nullptr, cfg), std::invalid_argument);

  Operator indefinite(2, 2);
  indefinite << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(integrate(indefinite, pauli_z(), model, nullptr, cfg), std::invalid_argument);
}

TEST(IntegrateTest, SamplesEndExactlyAtTmax) {
  const NoiseModel model = local_dephasing(1, 0.1);
  SimulationConfig cfg;
  cfg.w = 1.0;
  cfg.kappa = 0.1;
  cfg.t_max = 0.3700;
  cfg.dt = 1e-3;
  cfg.record_every = 100;
  const Ket plus = product_state("+");
  const Trajectory traj = integrate(plus * plus.adjoint(), pauli_z(), model, nullptr, cfg);
  EXPECT_DOUBLE_EQ(traj.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(traj.times.back(), 0.37);
  ASSERT_GE(traj.times.size(), 2u);
  EXPECT_NEAR(traj.times[1], 0.1, 1e-12);
}

TEST(TrajectoryCsvTest, HeaderAndFormattingAreStable) {
  const NoiseModel model = local_dephasing(1, 0.1);
  SimulationConfig cfg;
  cfg.w = 1.0;
  cfg.kappa = 0.1;
  cfg.t_max = 0.002;
  cfg.dt = 1e-3;
  cfg.record_every = 1;
  const Ket plus = product_state("+");
  const Trajectory traj = integrate(plus * plus.adjoint(), pauli_z(), model, nullptr, cfg);

  std::ostringstream bare;
  write_trajectory_csv(traj, bare);
  std::istringstream lines(bare.str());
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "t,trace_err,min_eig");
  int rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 3);  // t = 0, 1e-3, 2e-3

  std::ostringstream with_state;
  write_trajectory_csv(traj, with_state, true);
  std::istringstream state_lines(with_state.str());
  std::getline(state_lines, header);
  EXPECT_EQ(header.substr(0, 30), "t,trace_err,min_eig,rho_re_0_0");

  // Determinism: a second serialization is byte-identical.
  std::ostringstream again;
  write_trajectory_csv(traj, again, true);
  EXPECT_EQ(with_state.str(), again.str());
}

}  // namespace
}  // namespace autoqec
