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
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "autoqec/diagnostics.hpp"
#include "autoqec/metrology.hpp"
#include "autoqec/scenario.hpp"

namespace autoqec {

struct RunOptions {
  std::string out_dir = "out";
  bool write_files = true;
  double dt = 0.0;     // integrator step override (0 = policy)
  double dw = 0.0;     // finite-difference step override (0 = policy)
  double t_max = 0.0;  // horizon override (0 = scenario value)
  int samples = 50;
  bool curves = true;            // run the QFI sweep (off for search-only)
  bool with_scaling = false;     // also run the R-doubling study
  std::vector<double> scaling_r;  // defaults to the scenario R list
};

// Per-(R, c) sweep member.
struct MemberResult {
  double r = 0.0;
  int order = 1;
  QfiCurve curve;
  std::string csv_name;
};

// Diagnostics evaluated at one correction order.
struct OrderDiagnostics {
  int order = 1;
  KlReport kl;
  P1P2Report p12;
  BlockFormReport block;
  std::vector<int> p_n;
  int q_max = 0;
};

struct RunReport {
  Scenario scenario;  // effective config, overrides applied
  bool searched = false;
  bool search_failed = false;
  std::vector<PairAttempt> attempts;
  std::optional<CodePair> pair;
  Ket mu0, mu1;
  double h0 = 0.0, h1 = 0.0;  // codeword energies <mu|H|mu>
  HnlsReport hnls;
  std::vector<OrderDiagnostics> diagnostics;
  std::vector<MemberResult> members;
  std::optional<ScalingReport> scaling;
  double wall_seconds = 0.0;
  std::vector<std::string> files;  // paths written, relative to out_dir
};

// Writes the five-column curve CSV.  Absent series (no projection computed,
// no baseline merged) leave their cells empty so the header never changes
// shape.
inline void write_qfi_csv(const QfiCurve& c, std::ostream& os) {
  os << "t,qfi,qfi_projected,qfi_ideal,qfi_noqec\n";
  for (size_t k = 0; k < c.times.size(); ++k) {
    os << format_sig12(c.times[k]) << ',' << format_sig12(c.qfi[k]) << ',';
    if (k < c.qfi_projected.size()) os << format_sig12(c.qfi_projected[k]);
    os << ',' << format_sig12(c.qfi_ideal[k]) << ',';
    if (k < c.qfi_noqec.size()) os << format_sig12(c.qfi_noqec[k]);
    os << "\n";
  }
}

namespace detail {

inline Json kl_to_json(const KlReport& r) {
  return Json{{"satisfied", r.satisfied},
              {"max_offdiag", r.max_offdiag},
              {"max_diag_gap", r.max_diag_gap},
              {"tol", r.tol}};
}

inline Json scaling_to_json(const ScalingReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["R"] = r.r_values;
  j["eps"] = r.eps;
  j["ratio"] = r.ratios;
  j["fitted_c"] = r.fitted_c;
  j["t_probe"] = r.t_probe;
  j["f_ideal"] = r.f_ideal;
  j["integrator_error"] = r.integrator_error;
  j["resolvable"] = r.resolvable;
  j["flagged"] = r.flagged;
  return j;
}

inline Json report_to_json(const RunReport& rep) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["scenario"] = to_json(rep.scenario);

  Json code;
  code["mode"] = rep.scenario.code_mode;
  code["searched"] = rep.searched;
  code["search_failed"] = rep.search_failed;
  if (rep.searched) {
    Json attempts = Json::array();
    for (const auto& a : rep.attempts)
      attempts.push_back(Json{{"group_i", a.group_i},
                              {"group_j", a.group_j},
                              {"gap", a.gap},
                              {"feasible", a.feasible},
                              {"condition_flagged", a.condition_flagged}});
    code["attempts"] = attempts;
  }
  if (rep.pair) {
    std::vector<double> pi(rep.pair->p_i.data(), rep.pair->p_i.data() + rep.pair->p_i.size());
    std::vector<double> pj(rep.pair->p_j.data(), rep.pair->p_j.data() + rep.pair->p_j.size());
    code["pair"] = Json{{"group_i", rep.pair->group_i}, {"group_j", rep.pair->group_j},
                        {"h_i", rep.pair->h_i},         {"h_j", rep.pair->h_j},
                        {"gap", rep.pair->logical_gap}, {"p_i", pi},
                        {"p_j", pj},                    {"condition_flagged", rep.pair->lp.condition_flagged}};
  }
  if (!rep.search_failed) {
    code["codeword_energies"] = {rep.h0, rep.h1};
    Json orders = Json::array();
    for (const auto& d : rep.diagnostics)
      orders.push_back(Json{{"c", d.order},
                            {"kl", kl_to_json(d.kl)},
                            {"p1", d.p12.p1},
                            {"p2", d.p12.p2},
                            {"max_p1_violation", d.p12.max_p1_violation},
                            {"max_p2_violation", d.p12.max_p2_violation},
                            {"block_form", Json{{"passes", d.block.passes}, {"residual", d.block.residual}}},
                            {"p_n", d.p_n},
                            {"q_max", d.q_max}});
    code["orders"] = orders;
  }
  code["hnls"] = Json{{"satisfied", rep.hnls.satisfied}, {"perp_norm", rep.hnls.perp_norm}};
  j["code"] = code;

  Json members = Json::array();
  for (const auto& m : rep.members) {
    Json e;
    e["R"] = m.r;
    e["c"] = m.order;
    e["csv"] = m.csv_name;
    e["dt"] = m.curve.dt;
    e["dw"] = m.curve.dw;
    if (!m.curve.times.empty()) {
      e["final_t"] = m.curve.times.back();
      e["final_qfi"] = m.curve.qfi.back();
      if (!m.curve.qfi_projected.empty()) e["final_qfi_projected"] = m.curve.qfi_projected.back();
      e["final_qfi_ideal"] = m.curve.qfi_ideal.back();
      if (!m.curve.qfi_noqec.empty()) e["final_qfi_noqec"] = m.curve.qfi_noqec.back();
    }
    members.push_back(e);
  }
  j["members"] = members;
  j["scaling"] = rep.scaling ? scaling_to_json(*rep.scaling) : Json(nullptr);
  j["wall_seconds"] = rep.wall_seconds;
  j["notes"] = rep.scenario.notes;
  j["files"] = rep.files;
  return j;
}

inline std::string member_csv_name(double r, int order) {
  std::ostringstream os;
  os << "curves_c" << order << "_R" << format_sig12(r) << ".csv";
  return os.str();
}

}  // namespace detail

// Executes the full pipeline for one scenario: build operators, obtain the
// code (search or explicit), run diagnostics, synthesize the dissipation
// scheme per order, sweep (R, c) members with a shared no-correction
// baseline, optionally run the scaling study, and write report + CSVs.
//
// A failed code search is not an exception: it is recorded in the report
// (search_failed, attempts) and the pipeline stops after diagnostics, as the
// CLI maps it to its own exit code.
inline RunReport run_scenario(const Scenario& scenario_in, const RunOptions& opts) {
  const auto t_start = std::chrono::steady_clock::now();

  RunReport rep;
  rep.scenario = scenario_in;
  if (opts.t_max > 0.0) rep.scenario.t_max = opts.t_max;
  const Scenario& s = rep.scenario;

  const Operator h = build_hamiltonian(s);
  const NoiseModel model = build_noise(s);
  if (s.orders.empty()) throw ConfigError("c: at least one correction order required");
  const int c_max = *std::max_element(s.orders.begin(), s.orders.end());

  std::map<int, ErrorStructure> errs;
  for (int c : s.orders) {
    if (!errs.count(c)) errs.emplace(c, build_error_structure(model, c));
  }
  const ErrorStructure& errs_max = errs.at(c_max);

  // --- code ---
  if (s.code_mode == "search") {
    rep.searched = true;
    const HamiltonianSpectrum spec = group_spectrum(h);
    const auto found = search_code(spec, errs_max, &rep.attempts);
    if (!found) {
      rep.search_failed = true;
      rep.hnls = check_hnls(h, errs_max);
    } else {
      rep.pair = found;
      rep.mu0 = found->mu0;
      rep.mu1 = found->mu1;
    }
  } else {
    auto [mu0, mu1] = build_codewords(s);
    rep.mu0 = mu0;
    rep.mu1 = mu1;
  }

  if (!rep.search_failed) {
    rep.h0 = rep.mu0.dot(h * rep.mu0).real();
    rep.h1 = rep.mu1.dot(h * rep.mu1).real();
    rep.hnls = check_hnls(h, errs_max);

    // --- per-order diagnostics and bases ---
    std::map<int, CorrectableBasis> bases;
    for (int c : s.orders) {
      const ErrorStructure& ec = errs.at(c);
      OrderDiagnostics d;
      d.order = c;
      d.kl = check_knill_laflamme(rep.mu0, rep.mu1, ec);
      CorrectableBasis basis = build_correctable_basis(rep.mu0, rep.mu1, ec, c);
      d.p12 = check_p1_p2(h, ec, basis);
      d.block = verify_hamiltonian_block_form(h, basis, rep.h0, rep.h1);
      d.p_n = basis.p_n;
      d.q_max = basis.q_max;
      rep.diagnostics.push_back(std::move(d));
      bases.emplace(c, std::move(basis));
    }

    if (opts.curves) {
      CurveOptions copts;
      copts.t_max = s.t_max;
      copts.samples = opts.samples;
      copts.dt = opts.dt;
      copts.dw = opts.dw;
      copts.projected = true;

      const Ket probe = build_probe(s, rep.mu0, rep.mu1);
      const Operator rho0 = probe * probe.adjoint();
      const QfiCurve baseline =
          compute_qfi_curve(h, rho0, model, nullptr, s.w, s.kappa, 0.0, copts);
      for (int c : s.orders) {
        const AutoQecScheme scheme = build_engineered_dissipation(bases.at(c), s.r_list.front(), s.kappa);
        for (double r : s.r_list) {
          MemberResult m;
          m.r = r;
          m.order = c;
          m.curve = compute_qfi_curve(h, rho0, model, &scheme, s.w, s.kappa, r, copts);
          // Merge the no-correction baseline onto the member grid.
          m.curve.qfi_noqec.resize(m.curve.times.size());
          for (size_t k = 0; k < m.curve.times.size(); ++k) {
            if (std::abs(m.curve.times[k] - baseline.times[k]) > 1e-9)
              throw std::runtime_error("run_scenario: baseline grid mismatch");
            m.curve.qfi_noqec[k] = baseline.qfi[k];
          }
          m.curve.label = s.name + "_c" + std::to_string(c) + "_R" + format_sig12(r);
          rep.members.push_back(std::move(m));
        }
      }

      if (opts.with_scaling) {
        const std::vector<double>& rl = opts.scaling_r.empty() ? s.r_list : opts.scaling_r;
        const int c_top = s.orders.back();
        const AutoQecScheme scheme = build_engineered_dissipation(bases.at(c_top), rl.front(), s.kappa);
        rep.scaling =
            scaling_experiment(h, rho0, model, &scheme, s.w, s.kappa, rl, s.t_max, copts);
      }
    }
  }

  // --- file emission ---
  if (opts.write_files) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(opts.out_dir) / s.name;
    fs::create_directories(dir);

    for (auto& m : rep.members) {
      m.csv_name = rep.members.size() == 1 ? "curves.csv" : detail::member_csv_name(m.r, m.order);
      std::ofstream os(dir / m.csv_name, std::ios::binary);
      write_qfi_csv(m.curve, os);
      rep.files.push_back((fs::path(s.name) / m.csv_name).string());
    }
    if (rep.members.size() > 1) {
      // The headline curve (highest order, then highest R) is also written
      // to the fixed curves.csv path.
      const MemberResult* best = &rep.members.front();
      for (const auto& m : rep.members)
        if (m.order > best->order || (m.order == best->order && m.r > best->r)) best = &m;
      std::ofstream os(dir / "curves.csv", std::ios::binary);
      write_qfi_csv(best->curve, os);
      rep.files.push_back((fs::path(s.name) / "curves.csv").string());
    }
    if (rep.scaling) {
      std::ofstream os(dir / "scaling.json", std::ios::binary);
      os << detail::scaling_to_json(*rep.scaling).dump(2) << "\n";
      rep.files.push_back((fs::path(s.name) / "scaling.json").string());
    }
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    rep.files.push_back((fs::path(s.name) / "report.json").string());
    std::ofstream os(dir / "report.json", std::ios::binary);
    os << detail::report_to_json(rep).dump(2) << "\n";
  } else {
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  }
  return rep;
}

}  // namespace autoqec
