#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "thermomech/config.hpp"
#include "thermomech/csv.hpp"
#include "thermomech/dynamics.hpp"
#include "thermomech/oracles.hpp"
#include "thermomech/scenarios.hpp"

namespace {

using namespace thermomech;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitGuard = 2;
constexpr int kExitSecondLaw = 3;
constexpr int kExitVerifyFailed = 4;

struct RunManifest {
  std::string scenario;
  std::string config_path;
  std::string out_dir = ".";
  std::string trajectory_path;  // optional precomputed trajectory
  IntegratorConfig integrator;
  double audit_tol = 1e-6;
};

double audit_tolerance() {
  if (const char* env = std::getenv("THERMOMECH_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end != env && value > 0.0) return value;
    throw ConfigError("THERMOMECH_TOL is not a positive number");
  }
  return 1e-6;
}

Scenario load_scenario(const RunManifest& manifest) {
  bool known = false;
  for (const auto& name : scenario_names())
    if (name == manifest.scenario) known = true;
  if (!known) throw ConfigError("unknown scenario: " + manifest.scenario);
  const ConfigFile file = parse_config_file(manifest.config_path);
  return build_scenario(scenario_config_from(file, manifest.scenario));
}

std::filesystem::path out_path(const RunManifest& manifest,
                               const std::string& file) {
  std::filesystem::create_directories(manifest.out_dir);
  return std::filesystem::path(manifest.out_dir) / file;
}

CsvTable trajectory_table(const Trajectory& traj) {
  CsvTable table;
  table.header.push_back("t");
  for (const auto& name : traj.state_names) table.header.push_back(name);
  for (const auto& name : traj.full_names) table.header.push_back(name);
  for (int i = 0; i < traj.size(); ++i) {
    std::vector<double> row;
    row.reserve(table.header.size());
    row.push_back(traj.times[i]);
    for (int j = 0; j < traj.states[i].size(); ++j)
      row.push_back(traj.states[i][j]);
    for (int j = 0; j < traj.full_states[i].size(); ++j)
      row.push_back(traj.full_states[i][j]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Trajectory trajectory_from_csv(const std::string& path,
                               const Scenario& scenario) {
  const CsvTable table = read_csv(path);
  const size_t expected = 1 + static_cast<size_t>(scenario.ode.dim) +
                          scenario.reconstruction.full_names.size();
  if (table.header.size() != expected)
    throw ConfigError("trajectory file has wrong column count");
  Trajectory traj;
  traj.state_names = scenario.ode.state_names;
  traj.full_names = scenario.reconstruction.full_names;
  for (const auto& row : table.rows) {
    traj.times.push_back(row[0]);
    Eigen::VectorXd reduced(scenario.ode.dim);
    for (int j = 0; j < scenario.ode.dim; ++j) reduced[j] = row[1 + j];
    Eigen::VectorXd full(
        static_cast<int>(scenario.reconstruction.full_names.size()));
    for (int j = 0; j < full.size(); ++j)
      full[j] = row[1 + scenario.ode.dim + j];
    traj.states.push_back(std::move(reduced));
    traj.full_states.push_back(std::move(full));
  }
  if (traj.size() < 5) throw ConfigError("trajectory file is too short");
  return traj;
}

void write_report_csv(const std::filesystem::path& path,
                      const SimulationReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "metric,value\r\n";
  out << "energy_drift," << format_field(report.energy_drift) << "\r\n";
  out << "entropy_margin_min," << format_field(report.entropy_margin_min)
      << "\r\n";
  out << "constraint_residual_max,"
      << format_field(report.constraint_residual_max) << "\r\n";
  out << "dalembert_violation_max,"
      << format_field(report.dalembert_violation_max) << "\r\n";
  out << "second_law_accepted,"
      << format_field(report.second_law_accepted ? 1.0 : 0.0) << "\r\n";
  if (report.reversibility_error)
    out << "reversibility_error," << format_field(*report.reversibility_error)
        << "\r\n";
}

int cmd_simulate(const RunManifest& manifest) {
  const Scenario scenario = load_scenario(manifest);
  Trajectory traj =
      integrate(scenario.ode, scenario.initial_state, manifest.integrator);
  reconstruct(traj, scenario.reconstruction);
  lift_to_jets(traj);
  const SimulationReport report = run_audits(traj, scenario);

  write_csv(out_path(manifest, "trajectory.csv").string(),
            trajectory_table(traj));
  write_report_csv(out_path(manifest, "report.csv"), report);

  if (!report.second_law_accepted) {
    std::cerr << "second law rejected: min margin "
              << report.entropy_margin_min << "\n";
    return kExitSecondLaw;
  }
  return kExitOk;
}

struct VerifyRow {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

int cmd_verify(const RunManifest& manifest) {
  const Scenario scenario = load_scenario(manifest);
  Trajectory traj =
      manifest.trajectory_path.empty()
          ? integrate(scenario.ode, scenario.initial_state,
                      manifest.integrator)
          : trajectory_from_csv(manifest.trajectory_path, scenario);
  if (!traj.has_full()) reconstruct(traj, scenario.reconstruction);
  lift_to_jets(traj);

  const double tol = manifest.audit_tol;
  std::vector<VerifyRow> rows;

  const SocsAudit socs = socs_audit(traj, scenario.socs);
  rows.push_back({"kinematic_residual_max", socs.kinematic_max, tol,
                  socs.kinematic_max <= tol});
  rows.push_back({"dalembert_violation_max", socs.dalembert_max, tol,
                  socs.dalembert_max <= tol});

  const EnergyAudit energy = energy_audit(traj, scenario.socs);
  rows.push_back({"energy_drift", energy.max_relative, tol,
                  energy.max_relative <= tol});

  const SecondLawAudit law = second_law_audit(traj, scenario.socs);
  const double law_tol = scenario.socs.second_law
                             ? scenario.socs.second_law->tolerance
                             : 1e-8;
  rows.push_back({"second_law_margin_min", law.min_margin, -law_tol,
                  law.accepted});

  const std::string& name = scenario.name;
  if (name == "wagon-adiabatic" || name == "wagon-bath") {
    const ConfigFile file = parse_config_file(manifest.config_path);
    const ConfigTable& table = file.at(name);
    const double m = require_number(table, "m");
    const double mu = require_number(table, "mu");
    const double nu = require_number(table, "nu");
    const double x0 = require_number(table, "x0");
    const double v0 = require_number(table, "v0");
    const double T0 = require_number(table, "T0");

    double worst_x = 0.0;
    for (int i = 0; i < traj.size(); ++i)
      worst_x = std::max(
          worst_x, std::abs(traj.states[i][0] - oracles::wagon_position(
                                                    m, mu, x0, v0,
                                                    traj.times[i])));
    rows.push_back({"oracle_position_error", worst_x, tol, worst_x <= tol});

    try {
      double worst_t = 0.0;
      for (int i = 0; i < traj.size(); ++i) {
        const double t = traj.times[i];
        const double expected =
            name == "wagon-adiabatic"
                ? oracles::wagon_temperature_adiabatic(m, mu, nu, v0, T0, t)
                : oracles::wagon_temperature_bath(
                      m, mu, nu, require_number(table, "kappa"),
                      require_number(table, "Tb"), v0, T0, t);
        worst_t = std::max(worst_t, std::abs(traj.states[i][2] - expected));
      }
      rows.push_back(
          {"oracle_temperature_error", worst_t, tol, worst_t <= tol});
    } catch (const std::domain_error&) {
      // Resonant decay rates have no closed form; skip the comparison.
    }
  } else if (name == "piston-adiabatic") {
    const ConfigFile file = parse_config_file(manifest.config_path);
    const PistonAdiabaticConfig cfg = std::get<PistonAdiabaticConfig>(
        scenario_config_from(file, name));
    const double h0 =
        oracles::piston_hamiltonian(cfg, traj.states[0][0],
                                    cfg.m * traj.states[0][1]);
    double worst = 0.0;
    for (int i = 0; i < traj.size(); ++i)
      worst = std::max(
          worst, std::abs(oracles::piston_hamiltonian(
                              cfg, traj.states[i][0], cfg.m * traj.states[i][1]) -
                          h0) /
                     std::abs(h0));
    rows.push_back({"hamiltonian_drift", worst, tol, worst <= tol});

    const double rev = reversibility_check(
        scenario.ode, scenario.initial_state,
        std::min(2.0, manifest.integrator.t_end), manifest.integrator);
    rows.push_back({"reversibility_error", rev, tol, rev <= tol});
  } else if (name == "piston-isothermal") {
    const double rev = reversibility_check(
        scenario.ode, scenario.initial_state,
        std::min(2.0, manifest.integrator.t_end), manifest.integrator);
    rows.push_back({"reversibility_error", rev, tol, rev <= tol});
  } else if (name == "piston-dissipative" &&
             manifest.integrator.t_end >= 100.0) {
    const ConfigFile file = parse_config_file(manifest.config_path);
    const DissipativePistonConfig cfg = std::get<DissipativePistonConfig>(
        scenario_config_from(file, name));
    const auto rest = oracles::dissipative_steady_state(cfg);
    const Eigen::VectorXd& final = traj.states.back();
    const double dist = std::max({std::abs(final[0] - rest.x),
                                  std::abs(final[2] - rest.temperature),
                                  std::abs(final[3] - rest.temperature)});
    rows.push_back({"steady_state_distance", dist, 1e-3, dist <= 1e-3});
  }

  bool all_pass = true;
  std::printf("%-28s %14s %14s  %s\n", "check", "value", "threshold",
              "status");
  for (const auto& row : rows) {
    all_pass = all_pass && row.pass;
    std::printf("%-28s %14.6e %14.6e  %s\n", row.name.c_str(), row.value,
                row.threshold, row.pass ? "PASS" : "FAIL");
  }
  return all_pass ? kExitOk : kExitVerifyFailed;
}

int cmd_report(const RunManifest& manifest) {
  const Scenario scenario = load_scenario(manifest);
  Trajectory traj =
      manifest.trajectory_path.empty()
          ? integrate(scenario.ode, scenario.initial_state,
                      manifest.integrator)
          : trajectory_from_csv(manifest.trajectory_path, scenario);
  if (!traj.has_full()) reconstruct(traj, scenario.reconstruction);

  const auto index_of = [&](const std::string& name) {
    for (size_t i = 0; i < traj.full_names.size(); ++i)
      if (traj.full_names[i] == name) return static_cast<int>(i);
    return -1;
  };

  // Temperature/position figure data.
  {
    CsvTable table;
    table.header = {"t", "T", "x"};
    const int tc = index_of("T_c");
    if (tc >= 0) table.header.push_back("T_c");
    const int t_idx = index_of("T");
    const int x_idx = index_of("x");
    for (int i = 0; i < traj.size(); ++i) {
      std::vector<double> row = {traj.times[i], traj.full_states[i][t_idx],
                                 traj.full_states[i][x_idx]};
      if (tc >= 0) row.push_back(traj.full_states[i][tc]);
      table.rows.push_back(std::move(row));
    }
    write_csv(out_path(manifest, "figure_temperatures.csv").string(), table);
  }

  // Entropy figure data.
  {
    CsvTable table;
    table.header = {"t", "S"};
    const int s_idx = index_of("S");
    const int sc_idx = index_of("S_c");
    if (sc_idx >= 0) {
      table.header.push_back("S_c");
      table.header.push_back("S_total");
    }
    for (int i = 0; i < traj.size(); ++i) {
      std::vector<double> row = {traj.times[i], traj.full_states[i][s_idx]};
      if (sc_idx >= 0) {
        row.push_back(traj.full_states[i][sc_idx]);
        row.push_back(traj.full_states[i][s_idx] +
                      traj.full_states[i][sc_idx]);
      }
      table.rows.push_back(std::move(row));
    }
    write_csv(out_path(manifest, "figure_entropies.csv").string(), table);
  }

  // Phase-portrait grid for the conservative piston.
  if (scenario.name == "piston-adiabatic") {
    const ConfigFile file = parse_config_file(manifest.config_path);
    const PistonAdiabaticConfig cfg = std::get<PistonAdiabaticConfig>(
        scenario_config_from(file, scenario.name));
    const double gamma = cfg.gas.gamma();
    const double center = std::pow(
        cfg.adiabat_constant() * std::pow(cfg.A, 1.0 - gamma) /
            (cfg.m * cfg.g),
        1.0 / gamma);
    const double p_scale = cfg.m * std::sqrt(cfg.g * center);

    CsvTable table;
    table.header = {"q", "p", "H"};
    const int nq = 101, np = 41;
    for (int i = 0; i < nq; ++i) {
      const double q = center * (0.25 + 2.25 * i / (nq - 1.0));
      for (int j = 0; j < np; ++j) {
        const double p = p_scale * (-1.5 + 3.0 * j / (np - 1.0));
        table.rows.push_back({q, p, oracles::piston_hamiltonian(cfg, q, p)});
      }
    }
    write_csv(out_path(manifest, "figure_phase_portrait.csv").string(),
              table);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermo-mechanical system simulator and verifier"};
  app.require_subcommand(1);

  RunManifest manifest;
  bool have_dt = false, have_rtol = false, have_atol = false;
  double dt = 1e-3, rtol = 1e-9, atol = 1e-12;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", manifest.scenario, "scenario name")
        ->required();
    cmd->add_option("--config", manifest.config_path, "config file (TOML)")
        ->required();
    cmd->add_option("--t-end", manifest.integrator.t_end, "final time");
    cmd->add_option("--dt", dt, "fixed step (selects the fixed-step method)")
        ->each([&](const std::string&) { have_dt = true; });
    cmd->add_option("--rtol", rtol, "adaptive relative tolerance")
        ->each([&](const std::string&) { have_rtol = true; });
    cmd->add_option("--atol", atol, "adaptive absolute tolerance")
        ->each([&](const std::string&) { have_atol = true; });
    cmd->add_option("--out", manifest.out_dir, "output directory");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run a scenario");
  add_common(simulate);
  CLI::App* verify =
      app.add_subcommand("verify", "run the audit battery");
  add_common(verify);
  verify->add_option("--trajectory", manifest.trajectory_path,
                     "audit an existing trajectory CSV");
  CLI::App* report = app.add_subcommand("report", "emit figure data");
  add_common(report);
  report->add_option("--trajectory", manifest.trajectory_path,
                     "use an existing trajectory CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (have_dt && (have_rtol || have_atol))
      throw ConfigError("choose either --dt or --rtol/--atol");
    if (have_rtol || have_atol) {
      manifest.integrator.method = IntegratorConfig::Method::RK45;
      manifest.integrator.rtol = rtol;
      manifest.integrator.atol = atol;
    } else {
      // Fixed steps by default: the audits differentiate the sample grid,
      // so their fidelity tracks its density.
      manifest.integrator.method = IntegratorConfig::Method::RK4;
      manifest.integrator.dt = dt;
    }
    manifest.audit_tol = audit_tolerance();
    manifest.integrator.validate();

    if (simulate->parsed()) return cmd_simulate(manifest);
    if (verify->parsed()) return cmd_verify(manifest);
    return cmd_report(manifest);
  } catch (const GuardViolation& e) {
    std::cerr << "integration stopped: " << e.what() << "\n";
    return kExitGuard;
  } catch (const MaxStepsExceeded& e) {
    std::cerr << "integration stopped: " << e.what() << "\n";
    return kExitGuard;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
