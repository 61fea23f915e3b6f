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
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoqec/lindblad.hpp"
#include "autoqec/qfi.hpp"

namespace autoqec {

struct CurveOptions {
  double t_max = 5.0;
  int samples = 50;    // evaluation points after t = 0
  double dt = 0.0;     // 0 selects the default step policy
  double dw = 0.0;     // 0 selects 1e-4 * max(1, |w|)
  bool projected = true;  // also score the state after the CPTP projection
};

// A QFI-vs-time curve.  `qfi` is the raw SLD Fisher information of the
// evolved state; `qfi_projected` scores the state after the engineered CPTP
// projection (empty without a scheme); `qfi_ideal` is the noiseless
// benchmark; `qfi_noqec` is filled when a no-correction baseline run is
// merged onto the same grid.
struct QfiCurve {
  std::vector<double> times;
  std::vector<double> qfi;
  std::vector<double> qfi_projected;
  std::vector<double> qfi_ideal;
  std::vector<double> qfi_noqec;
  double w = 0.0, kappa = 0.0, R = 0.0, dw = 0.0, dt = 0.0;
  int order = 0;  // correction order c (0 when no scheme)
  std::string label;
};

namespace detail {

// Aligns the integration grid with the requested sample times: the step is
// the largest value <= the stability policy that divides the sample spacing
// exactly, so every run of a parameter sweep lands on identical times.
inline std::pair<double, int> aligned_step(double sample_dt, double policy_dt) {
  int per = static_cast<int>(std::ceil(sample_dt / policy_dt - 1e-12));
  if (per < 1) per = 1;
  return {sample_dt / per, per};
}

}  // namespace detail

// Estimates the QFI of the evolved state over a shared time grid via
// central finite differences in w: two integrations at w +- dw (plus one at
// w itself when the projected curve is requested) are run on identical
// grids, and each sample is scored with the SLD formula.
inline QfiCurve compute_qfi_curve(const Operator& h, const Operator& rho0, const NoiseModel& model,
                                  const AutoQecScheme* scheme, double w, double kappa, double r_ratio,
                                  const CurveOptions& opts) {
  if (opts.t_max <= 0.0) throw std::invalid_argument("compute_qfi_curve: t_max must be positive");
  if (opts.samples < 1) throw std::invalid_argument("compute_qfi_curve: samples must be >= 1");
  const double dw = opts.dw > 0.0 ? opts.dw : 1e-4 * std::max(1.0, std::abs(w));

  SimulationConfig cfg;
  cfg.w = w;
  cfg.kappa = kappa;
  cfg.R = scheme ? r_ratio : 0.0;
  cfg.t_max = opts.t_max;
  cfg.enforce_hermiticity = true;

  const double policy_dt = opts.dt > 0.0 ? opts.dt : default_dt(h, model, cfg);
  const auto [dt, per_sample] = detail::aligned_step(opts.t_max / opts.samples, policy_dt);
  cfg.dt = dt;
  cfg.record_every = per_sample;

  SimulationConfig cfg_plus = cfg, cfg_minus = cfg;
  cfg_plus.w = w + dw;
  cfg_minus.w = w - dw;
  const Trajectory plus = integrate(rho0, h, model, scheme, cfg_plus);
  const Trajectory minus = integrate(rho0, h, model, scheme, cfg_minus);
  const bool want_projection = scheme != nullptr && opts.projected;
  std::optional<Trajectory> center;
  if (want_projection) center = integrate(rho0, h, model, scheme, cfg);

  if (plus.times.size() != minus.times.size() ||
      (center && center->times.size() != plus.times.size()))
    throw std::runtime_error("compute_qfi_curve: internal error, runs sampled different grids");

  QfiCurve curve;
  curve.w = w;
  curve.kappa = kappa;
  curve.R = scheme ? r_ratio : 0.0;
  curve.dw = dw;
  curve.dt = dt;
  curve.order = scheme ? scheme->order() : 0;

  std::optional<CptpProjector> projector;
  if (want_projection) projector.emplace(*scheme);

  for (size_t k = 0; k < plus.times.size(); ++k) {
    const double t = plus.times[k];
    const Operator drho = (plus.states[k] - minus.states[k]) / (2.0 * dw);
    const Operator rho_c =
        center ? center->states[k] : Operator(0.5 * (plus.states[k] + minus.states[k]));
    curve.times.push_back(t);
    curve.qfi.push_back(qfi_sld(rho_c, drho));
    curve.qfi_ideal.push_back(ideal_qfi(h, rho0, t));
    if (want_projection) curve.qfi_projected.push_back(qfi_sld((*projector)(rho_c), (*projector)(drho)));
  }
  return curve;
}

// Sanity bounds every physical curve must satisfy sample by sample:
//   qfi_projected <= qfi + slack   (the projection is a channel)
//   qfi          <= qfi_ideal + slack   (noise never helps)
// with slack = 1e-4 * qfi_ideal + 1e-8 absorbing finite-difference bias.
struct DataProcessingReport {
  bool ok = false;
  int violations = 0;
  double max_violation = 0.0;
};

inline DataProcessingReport data_processing_check(const QfiCurve& c) {
  DataProcessingReport rep;
  for (size_t k = 0; k < c.times.size(); ++k) {
    const double slack = 1e-4 * c.qfi_ideal[k] + 1e-8;
    double v = c.qfi[k] - c.qfi_ideal[k] - slack;
    if (!c.qfi_projected.empty()) v = std::max(v, c.qfi_projected[k] - c.qfi[k] - slack);
    if (v > 0.0) {
      ++rep.violations;
      rep.max_violation = std::max(rep.max_violation, v);
    }
  }
  rep.ok = rep.violations == 0;
  return rep;
}

// Convergence study of the residual Fisher deficit
//   eps(R) = F_ideal(T) - F_R(T)
// over a rate ladder R, 2R, 4R, ...; under an order-c scheme the deficit
// contracts by ~2^c per doubling, so the fitted exponent
//   c_fit = mean log2( eps(R) / eps(2R) )
// estimates the protection order actually delivered.
struct ScalingReport {
  std::vector<double> r_values;
  std::vector<double> eps;
  std::vector<double> ratios;  // eps(R_k) / eps(R_{k+1})
  double fitted_c = 0.0;
  double t_probe = 0.0;
  double f_ideal = 0.0;
  double integrator_error = 0.0;  // step-halving error of F at the largest R
  bool resolvable = false;        // min eps > 100 * integrator_error
  bool flagged = false;           // some deficit was non-positive
};

inline ScalingReport scaling_experiment(const Operator& h, const Operator& rho0,
                                        const NoiseModel& model, const AutoQecScheme* scheme,
                                        double w, double kappa, const std::vector<double>& r_list,
                                        double t_probe, const CurveOptions& base_opts) {
  if (r_list.size() < 2)
    throw std::invalid_argument("scaling_experiment: need at least two rate ratios");
  for (size_t k = 0; k + 1 < r_list.size(); ++k) {
    if (!(r_list[k] > 0.0) || r_list[k + 1] <= r_list[k])
      throw std::invalid_argument("scaling_experiment: rate ratios must be positive and ascending");
    if (std::abs(r_list[k + 1] - 2.0 * r_list[k]) > 1e-9 * r_list[k + 1])
      throw std::invalid_argument("scaling_experiment: rate ratios must double at each step");
  }
  if (t_probe <= 0.0) throw std::invalid_argument("scaling_experiment: probe time must be positive");

  const double dw = base_opts.dw > 0.0 ? base_opts.dw : 1e-4 * std::max(1.0, std::abs(w));

  const auto f_at = [&](double r_ratio, double dt_scale) {
    SimulationConfig cfg;
    cfg.w = w;
    cfg.kappa = kappa;
    cfg.R = r_ratio;
    cfg.t_max = t_probe;
    const double policy = (base_opts.dt > 0.0 ? base_opts.dt : default_dt(h, model, cfg)) * dt_scale;
    const auto [dt, per] = detail::aligned_step(t_probe, policy);
    cfg.dt = dt;
    cfg.record_every = per;
    SimulationConfig cp = cfg, cm = cfg;
    cp.w = w + dw;
    cm.w = w - dw;
    const Trajectory plus = integrate(rho0, h, model, scheme, cp);
    const Trajectory minus = integrate(rho0, h, model, scheme, cm);
    const Operator drho = (plus.states.back() - minus.states.back()) / (2.0 * dw);
    const Operator rho_c = 0.5 * (plus.states.back() + minus.states.back());
    return qfi_sld(rho_c, drho);
  };

  ScalingReport rep;
  rep.t_probe = t_probe;
  rep.f_ideal = ideal_qfi(h, rho0, t_probe);
  rep.r_values = r_list;
  for (double r : r_list) rep.eps.push_back(rep.f_ideal - f_at(r, 1.0));

  double log_sum = 0.0;
  int log_count = 0;
  for (size_t k = 0; k + 1 < rep.eps.size(); ++k) {
    if (rep.eps[k] <= 0.0 || rep.eps[k + 1] <= 0.0) {
      rep.flagged = true;
      rep.ratios.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double ratio = rep.eps[k] / rep.eps[k + 1];
    rep.ratios.push_back(ratio);
    log_sum += std::log2(ratio);
    ++log_count;
  }
  rep.fitted_c = log_count > 0 ? log_sum / log_count : std::numeric_limits<double>::quiet_NaN();

  const double f_largest = rep.f_ideal - rep.eps.back();
  rep.integrator_error = std::abs(f_largest - f_at(r_list.back(), 0.5));
  double min_eps = std::numeric_limits<double>::infinity();
  for (double e : rep.eps) min_eps = std::min(min_eps, e);
  rep.resolvable = min_eps > 100.0 * rep.integrator_error;
  return rep;
}

}  // namespace autoqec
