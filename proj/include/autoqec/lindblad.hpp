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

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoqec/engine.hpp"
#include "autoqec/noise.hpp"

namespace autoqec {

// Parameters of one master-equation integration,
//   d rho / dt = -i w [H, rho] + kappa sum_a D[L_a] rho
//                + R kappa sum_b D[L_eng_b] rho.
// The rates used by the integrator are the ones in this struct; the kappa
// stored on the noise model and the R stored on the scheme are defaults
// recorded at build time, not runtime inputs.
struct SimulationConfig {
  double w = 1.0;
  double kappa = 0.0;
  double R = 0.0;
  double t_max = 0.0;
  double dt = 0.0;  // 0 selects the default step policy
  int record_every = 100;
  bool enforce_hermiticity = true;
};

class IntegratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lindblad dissipator D[A] rho = A rho A^dag - (A^dag A rho + rho A^dag A)/2.
inline Operator dissipator(const Operator& a, const Operator& rho) {
  if (a.rows() != a.cols() || rho.rows() != rho.cols() || a.rows() != rho.rows())
    throw std::invalid_argument("dissipator: operator and state dimensions must match");
  const Operator ada = a.adjoint() * a;
  return a * rho * a.adjoint() - 0.5 * (ada * rho + rho * ada);
}

// Reference right-hand side, evaluated directly from the definition.  The
// integrator uses a compiled form of the same generator; this function is
// the readable contract the compiled form is tested against.
inline Operator lindblad_rhs(const Operator& rho, const Operator& h, const NoiseModel& model,
                             const AutoQecScheme* scheme, const SimulationConfig& cfg) {
  Operator out = Complex(0.0, -1.0) * cfg.w * (h * rho - rho * h);
  for (const auto& l : model.ops) out += cfg.kappa * dissipator(l, rho);
  if (scheme)
    for (const auto& op : scheme->ops) out += cfg.R * cfg.kappa * dissipator(op.matrix(), rho);
  return out;
}

// Default fixed step: keep the fastest rate well resolved,
//   dt = min(1e-3, 0.02 / (R kappa + |w| max|H| + kappa sum_a max|L_a^dag L_a|)).
inline double default_dt(const Operator& h, const NoiseModel& model, const SimulationConfig& cfg) {
  double rate = cfg.R * cfg.kappa + std::abs(cfg.w) * max_abs(h);
  for (const auto& l : model.ops) rate += cfg.kappa * max_abs(Operator(l.adjoint() * l));
  if (rate <= 0.0) return 1e-3;
  return std::min(1e-3, 0.02 / rate);
}

struct Trajectory {
  std::vector<double> times;
  std::vector<Operator> states;
  std::vector<double> trace_error;     // |tr(rho) - 1| at each sample
  std::vector<double> min_eigenvalue;  // smallest eigenvalue at each sample
  double dt = 0.0;
  long steps = 0;
};

namespace detail {

// The master-equation generator, specialized once per run.  Diagonal jump
// operators (every dephasing model) collapse into a single entrywise
// coefficient matrix; a diagonal Hamiltonian joins the same matrix.  The
// engineered operators are applied through their rank-r factors, never as
// dense matrices, with the shared Gram matrix handling the anticommutator.
class CompiledRhs {
 public:
  CompiledRhs(const Operator& h, const NoiseModel& model, const AutoQecScheme* scheme,
              const SimulationConfig& cfg)
      : d_(h.rows()) {
    const double sqrt_kappa = std::sqrt(std::max(0.0, cfg.kappa));

    coef_ = Operator::Zero(d_, d_);
    h_diagonal_ = is_effectively_diagonal(h);
    if (h_diagonal_) {
      for (Eigen::Index i = 0; i < d_; ++i)
        for (Eigen::Index j = 0; j < d_; ++j)
          coef_(i, j) += Complex(0.0, -cfg.w) * (h(i, i).real() - h(j, j).real());
    } else {
      h_scaled_ = cfg.w * h;
    }

    for (const auto& l : model.ops) {
      if (cfg.kappa == 0.0) break;
      if (is_effectively_diagonal(l)) {
        for (Eigen::Index i = 0; i < d_; ++i)
          for (Eigen::Index j = 0; j < d_; ++j) {
            const Complex li = l(i, i), lj = l(j, j);
            coef_(i, j) += cfg.kappa * (li * std::conj(lj) -
                                        0.5 * (std::norm(li) + std::norm(lj)));
          }
      } else {
        dense_ops_.push_back(sqrt_kappa * l);
        dense_adag_a_.push_back(cfg.kappa * (l.adjoint() * l));
      }
    }
    has_coef_ = max_abs(coef_) > 0.0;

    if (scheme && !scheme->ops.empty() && cfg.R * cfg.kappa > 0.0) {
      const double rate = cfg.R * cfg.kappa;
      const double sqrt_rate = std::sqrt(rate);
      gram_ = Operator::Zero(d_, d_);
      for (const auto& op : scheme->ops) {
        const Eigen::Index r = static_cast<Eigen::Index>(op.targets.size());
        Operator t(d_, r), s(d_, r);
        for (Eigen::Index k = 0; k < r; ++k) {
          t.col(k) = op.targets[static_cast<size_t>(k)];
          s.col(k) = op.sources[static_cast<size_t>(k)];
        }
        gram_.noalias() += rate * (s * (t.adjoint() * t) * s.adjoint());
        targets_.push_back(sqrt_rate * t);
        sources_.push_back(std::move(s));
        rho_s_.emplace_back(d_, r);
        small_.emplace_back(r, r);
      }
      has_engineered_ = true;
    }

    tmp_.resize(d_, d_);
  }

  void operator()(const Operator& rho, Operator& out) {
    if (has_coef_)
      out = coef_.cwiseProduct(rho);
    else
      out.setZero();

    if (!h_diagonal_) {
      tmp_.noalias() = h_scaled_ * rho;
      tmp_.noalias() -= rho * h_scaled_;
      out += Complex(0.0, -1.0) * tmp_;
    }

    for (size_t a = 0; a < dense_ops_.size(); ++a) {
      tmp_.noalias() = dense_ops_[a] * rho;
      out.noalias() += tmp_ * dense_ops_[a].adjoint();
      out.noalias() -= 0.5 * (dense_adag_a_[a] * rho);
      out.noalias() -= 0.5 * (rho * dense_adag_a_[a]);
    }

    if (has_engineered_) {
      for (size_t b = 0; b < targets_.size(); ++b) {
        rho_s_[b].noalias() = rho * sources_[b];
        small_[b].noalias() = sources_[b].adjoint() * rho_s_[b];
        out.noalias() += targets_[b] * small_[b] * targets_[b].adjoint();
      }
      out.noalias() -= 0.5 * (gram_ * rho);
      out.noalias() -= 0.5 * (rho * gram_);
    }
  }

 private:
  static bool is_effectively_diagonal(const Operator& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (i != j && std::abs(m(i, j)) > 1e-14) return false;
    return true;
  }

  Eigen::Index d_;
  bool h_diagonal_ = false;
  bool has_coef_ = false;
  bool has_engineered_ = false;
  Operator coef_;
  Operator h_scaled_;
  std::vector<Operator> dense_ops_;
  std::vector<Operator> dense_adag_a_;
  std::vector<Operator> targets_;  // scaled by sqrt(R kappa)
  std::vector<Operator> sources_;
  std::vector<Operator> rho_s_, small_;  // preallocated rank-r work buffers
  Operator gram_;  // R kappa sum_b L_b^dag L_b
  Operator tmp_;
};

inline double min_eigenvalue(const Operator& rho) {
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitize(rho), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace detail

// Fixed-step RK4 integration of the master equation.  Hermiticity is
// re-imposed after every step (configurable); trace and positivity are
// monitored, never enforced: a trace drift beyond 1e-6 at any step, or a
// sampled eigenvalue below -1e-6, aborts with IntegratorError.
inline Trajectory integrate(const Operator& rho0, const Operator& h, const NoiseModel& model,
                            const AutoQecScheme* scheme, const SimulationConfig& cfg) {
  const Eigen::Index d = rho0.rows();
  if (h.rows() != d || h.cols() != d || rho0.cols() != d)
    throw std::invalid_argument("integrate: dimension mismatch between state and Hamiltonian");
  if (model.dim() != d) throw std::invalid_argument("integrate: dimension mismatch with noise model");
  if (scheme && scheme->basis.dim != d)
    throw std::invalid_argument("integrate: dimension mismatch with engineered scheme");
  if (!is_hermitian(rho0, 1e-8) || std::abs(rho0.trace().real() - 1.0) > 1e-10 ||
      std::abs(rho0.trace().imag()) > 1e-10 || detail::min_eigenvalue(rho0) < -1e-8)
    throw std::invalid_argument("integrate: initial state is not a density matrix");
  if (cfg.t_max <= 0.0) throw std::invalid_argument("integrate: t_max must be positive");
  if (cfg.record_every < 1) throw std::invalid_argument("integrate: record_every must be >= 1");

  const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(h, model, cfg);
  long steps = static_cast<long>(std::ceil(cfg.t_max / dt - 1e-9));
  if (steps < 1) steps = 1;

  detail::CompiledRhs rhs(h, model, scheme, cfg);
  Operator rho = hermitize(rho0);
  Operator k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);

  Trajectory traj;
  traj.dt = dt;
  traj.steps = steps;

  const auto sample = [&](double t) {
    const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    const double min_eig = detail::min_eigenvalue(rho);
    traj.times.push_back(t);
    traj.states.push_back(rho);
    traj.trace_error.push_back(trace_err);
    traj.min_eigenvalue.push_back(min_eig);
    if (min_eig < -1e-6)
      throw IntegratorError("integration unstable, reduce dt (eigenvalue " +
                            std::to_string(min_eig) + " at t = " + std::to_string(t) + ")");
  };

  sample(0.0);
  for (long n = 1; n <= steps; ++n) {
    const double t_prev = static_cast<double>(n - 1) * dt;
    // Final step is shortened so the trajectory ends exactly at t_max.
    const double step = (n == steps) ? cfg.t_max - t_prev : dt;

    rhs(rho, k1);
    stage = rho + (0.5 * step) * k1;
    rhs(stage, k2);
    stage = rho + (0.5 * step) * k2;
    rhs(stage, k3);
    stage = rho + step * k3;
    rhs(stage, k4);
    rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (cfg.enforce_hermiticity) rho = hermitize(rho);

    const double t = (n == steps) ? cfg.t_max : static_cast<double>(n) * dt;
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-6)
      throw IntegratorError("integration unstable, reduce dt (trace drift at t = " +
                            std::to_string(t) + ")");
    if (n % cfg.record_every == 0 || n == steps) sample(t);
  }
  return traj;
}

// Writes `t,trace_err,min_eig` per sample; with `include_state`, appends the
// row-major real and imaginary parts of rho.  All values at 12 significant
// digits so identical runs produce identical bytes.
inline void write_trajectory_csv(const Trajectory& traj, std::ostream& os,
                                 bool include_state = false) {
  os << "t,trace_err,min_eig";
  if (include_state && !traj.states.empty()) {
    const Eigen::Index d = traj.states.front().rows();
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        os << ",rho_re_" << i << "_" << j << ",rho_im_" << i << "_" << j;
  }
  os << "\n";
  for (size_t k = 0; k < traj.times.size(); ++k) {
    os << format_sig12(traj.times[k]) << ',' << format_sig12(traj.trace_error[k]) << ','
       << format_sig12(traj.min_eigenvalue[k]);
    if (include_state) {
      const Operator& rho = traj.states[k];
      for (Eigen::Index i = 0; i < rho.rows(); ++i)
        for (Eigen::Index j = 0; j < rho.cols(); ++j)
          os << ',' << format_sig12(rho(i, j).real()) << ',' << format_sig12(rho(i, j).imag());
    }
    os << "\n";
  }
}

}  // namespace autoqec
