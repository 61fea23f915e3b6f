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

// Command-line front end: code search, master-equation simulation, QFI
// curves, and scaling studies over preset or user-supplied scenarios.
//
// Exit codes: 0 success, 1 usage/config error, 2 infeasible code search,
// 3 integrator abort.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "autoqec/autoqec.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIntegrator = 3;

struct CommonArgs {
  std::string preset_name;
  std::string config_path;
  std::string out_dir = "out";
  double dt = 0.0;
  double dw = 0.0;
  double t_max = 0.0;
  unsigned seed = 0;  // reserved for randomized tooling; physics is seed-free
};

void add_common(CLI::App* cmd, CommonArgs& args, bool want_scenario = true) {
  if (want_scenario) {
    auto* preset = cmd->add_option("--preset", args.preset_name, "preset scenario name");
    auto* config = cmd->add_option("--config", args.config_path, "path to a scenario JSON file");
    preset->excludes(config);
  }
  cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--dt", args.dt, "integrator step override")->check(CLI::NonNegativeNumber);
  cmd->add_option("--dw", args.dw, "finite-difference step override")->check(CLI::NonNegativeNumber);
  cmd->add_option("--t-max", args.t_max, "time horizon override")->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", args.seed, "seed for randomized tooling (does not affect physics)");
}

autoqec::Scenario resolve_scenario(const CommonArgs& args) {
  if (!args.preset_name.empty()) return autoqec::preset(args.preset_name);
  if (!args.config_path.empty()) return autoqec::load_config(args.config_path);
  throw autoqec::ConfigError("scenario: provide --preset <name> or --config <file>");
}

void print_code_summary(const autoqec::RunReport& rep) {
  std::cout << "scenario: " << rep.scenario.name << "\n";
  if (rep.searched) {
    std::cout << "code search attempts:\n";
    for (const auto& a : rep.attempts)
      std::cout << "  pair (" << a.group_i << ", " << a.group_j << ") gap "
                << autoqec::format_sig12(a.gap) << " -> "
                << (a.feasible ? "feasible" : "infeasible") << "\n";
  }
  if (rep.search_failed) {
    std::cout << "code search FAILED: no eigenvalue pair admits a feasible code\n";
    return;
  }
  if (rep.pair) {
    std::cout << "selected pair: groups (" << rep.pair->group_i << ", " << rep.pair->group_j
              << "), h = (" << autoqec::format_sig12(rep.pair->h_i) << ", "
              << autoqec::format_sig12(rep.pair->h_j) << "), gap "
              << autoqec::format_sig12(rep.pair->logical_gap) << "\n";
    std::cout << "  p_i =";
    for (Eigen::Index k = 0; k < rep.pair->p_i.size(); ++k)
      std::cout << ' ' << autoqec::format_sig12(rep.pair->p_i(k));
    std::cout << "\n  p_j =";
    for (Eigen::Index k = 0; k < rep.pair->p_j.size(); ++k)
      std::cout << ' ' << autoqec::format_sig12(rep.pair->p_j(k));
    std::cout << "\n";
  }
  std::cout << "HNLS: " << (rep.hnls.satisfied ? "satisfied" : "violated")
            << " (|H_perp| = " << autoqec::format_sig12(rep.hnls.perp_norm) << ")\n";
  for (const auto& d : rep.diagnostics) {
    std::cout << "order c = " << d.order << ": KL " << (d.kl.satisfied ? "true" : "false")
              << ", P1 " << (d.p12.p1 ? "true" : "false") << ", P2 "
              << (d.p12.p2 ? "true" : "false") << ", p_n = [";
    for (size_t k = 0; k < d.p_n.size(); ++k) std::cout << (k ? ", " : "") << d.p_n[k];
    std::cout << "], q_max = " << d.q_max << "\n";
  }
}

int run_with_exit_codes(const autoqec::Scenario& scenario, const autoqec::RunOptions& opts,
                        bool print_summary) {
  const autoqec::RunReport rep = autoqec::run_scenario(scenario, opts);
  if (print_summary) print_code_summary(rep);
  if (!rep.members.empty()) {
    for (const auto& m : rep.members)
      std::cout << "member c=" << m.order << " R=" << autoqec::format_sig12(m.r)
                << ": F(T) = " << autoqec::format_sig12(m.curve.qfi.back()) << " (ideal "
                << autoqec::format_sig12(m.curve.qfi_ideal.back()) << ")"
                << (m.csv_name.empty() ? "" : " -> " + m.csv_name) << "\n";
  }
  if (rep.scaling) {
    std::cout << "scaling: fitted_c = " << autoqec::format_sig12(rep.scaling->fitted_c)
              << (rep.scaling->resolvable ? "" : " (not resolvable at this step size)") << "\n";
  }
  if (opts.write_files)
    std::cout << "report: " << (std::filesystem::path(opts.out_dir) / scenario.name / "report.json").string()
              << "\n";
  return rep.search_failed ? kExitInfeasible : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AutoQEC code search, dissipation engineering, and metrology simulation"};
  app.require_subcommand(1);

  CommonArgs search_args, sim_args, curve_args, scaling_args, preset_args;
  std::vector<double> scaling_r;
  bool sim_dump_state = false;
  std::string preset_run_name;

  auto* search = app.add_subcommand("search-code", "search a code and report diagnostics");
  add_common(search, search_args);

  auto* simulate = app.add_subcommand("simulate", "integrate the master equation, write trajectory CSV");
  add_common(simulate, sim_args);
  simulate->add_flag("--dump-state", sim_dump_state, "append flattened rho columns to the CSV");

  auto* curve = app.add_subcommand("qfi-curve", "compute QFI curves for every (R, c) member");
  add_common(curve, curve_args);

  auto* scaling = app.add_subcommand("scaling", "run the R-doubling scaling study");
  add_common(scaling, scaling_args);
  scaling->add_option("--r-list", scaling_r, "rate ratios (each double the last)")->delimiter(',');

  auto* preset_cmd = app.add_subcommand("preset", "preset registry");
  auto* preset_list = preset_cmd->add_subcommand("list", "list preset names");
  auto* preset_run = preset_cmd->add_subcommand("run", "run a preset end to end");
  preset_run->add_option("name", preset_run_name, "preset name")->required();
  add_common(preset_run, preset_args, /*want_scenario=*/false);
  preset_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    // Normalize CLI11's per-error exit codes to the documented usage-error code.
    app.exit(e);
    return kExitError;
  }

  try {
    if (preset_list->parsed()) {
      for (const auto& name : autoqec::preset_names()) std::cout << name << "\n";
      return 0;
    }

    if (search->parsed()) {
      autoqec::RunOptions opts;
      opts.out_dir = search_args.out_dir;
      opts.curves = false;
      return run_with_exit_codes(resolve_scenario(search_args), opts, true);
    }

    if (simulate->parsed()) {
      const autoqec::Scenario s = resolve_scenario(sim_args);
      autoqec::RunOptions ropts;
      ropts.curves = false;
      ropts.write_files = false;
      const autoqec::RunReport rep = autoqec::run_scenario(s, ropts);
      if (rep.search_failed) {
        print_code_summary(rep);
        return kExitInfeasible;
      }
      const autoqec::Operator h = autoqec::build_hamiltonian(rep.scenario);
      const autoqec::NoiseModel model = autoqec::build_noise(rep.scenario);
      const autoqec::ErrorStructure errs =
          autoqec::build_error_structure(model, rep.scenario.orders.front());
      const autoqec::CorrectableBasis basis = autoqec::build_correctable_basis(
          rep.mu0, rep.mu1, errs, rep.scenario.orders.front());
      const autoqec::AutoQecScheme scheme = autoqec::build_engineered_dissipation(
          basis, rep.scenario.r_list.front(), rep.scenario.kappa);
      const autoqec::Ket probe = autoqec::build_probe(rep.scenario, rep.mu0, rep.mu1);

      autoqec::SimulationConfig cfg;
      cfg.w = rep.scenario.w;
      cfg.kappa = rep.scenario.kappa;
      cfg.R = rep.scenario.r_list.front();
      cfg.t_max = sim_args.t_max > 0.0 ? sim_args.t_max : rep.scenario.t_max;
      cfg.dt = sim_args.dt;
      const autoqec::Trajectory traj =
          autoqec::integrate(probe * probe.adjoint(), h, model, &scheme, cfg);

      namespace fs = std::filesystem;
      const fs::path dir = fs::path(sim_args.out_dir) / rep.scenario.name;
      fs::create_directories(dir);
      std::ofstream os(dir / "trajectory.csv", std::ios::binary);
      autoqec::write_trajectory_csv(traj, os, sim_dump_state);
      std::cout << "trajectory: " << (dir / "trajectory.csv").string() << " (" << traj.times.size()
                << " samples, dt = " << autoqec::format_sig12(traj.dt) << ")\n";
      return 0;
    }

    if (curve->parsed()) {
      autoqec::RunOptions opts;
      opts.out_dir = curve_args.out_dir;
      opts.dt = curve_args.dt;
      opts.dw = curve_args.dw;
      opts.t_max = curve_args.t_max;
      return run_with_exit_codes(resolve_scenario(curve_args), opts, true);
    }

    if (scaling->parsed()) {
      autoqec::RunOptions opts;
      opts.out_dir = scaling_args.out_dir;
      opts.dt = scaling_args.dt;
      opts.dw = scaling_args.dw;
      opts.t_max = scaling_args.t_max;
      opts.with_scaling = true;
      opts.scaling_r = scaling_r;
      return run_with_exit_codes(resolve_scenario(scaling_args), opts, true);
    }

    if (preset_run->parsed()) {
      autoqec::RunOptions opts;
      opts.out_dir = preset_args.out_dir;
      opts.dt = preset_args.dt;
      opts.dw = preset_args.dw;
      opts.t_max = preset_args.t_max;
      return run_with_exit_codes(autoqec::preset(preset_run_name), opts, true);
    }
  } catch (const autoqec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitError;
  } catch (const autoqec::IntegratorError& e) {
    std::cerr << "integrator error: " << e.what() << "\n";
    return kExitIntegrator;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
