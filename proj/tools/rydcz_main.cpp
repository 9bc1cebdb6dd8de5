// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>

#include "rydcz/config.hpp"
#include "rydcz/io.hpp"
#include "rydcz/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rydcz;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset_name;
  std::string out_dir = "out";
  int jobs = 0;
  double tol = 0.0;  // 0 = keep config value
  std::string format = "csv";
  int samples = 0;   // 0 = keep config value
  bool dense = false;
  bool trajectories = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_input = true) {
  auto* config = cmd->add_option("--config", args.config_path, "JSON config file");
  auto* preset = cmd->add_option("--preset", args.preset_name, "built-in preset name");
  if (needs_input) {
    config->excludes(preset);
    cmd->final_callback([&args, cmd] {
      if (args.config_path.empty() && args.preset_name.empty()) {
        throw CLI::ValidationError(cmd->get_name() + " needs --config or --preset");
      }
    });
  }
  cmd->add_option("--out-dir", args.out_dir, "output directory (env RYDCZ_OUT_DIR overrides the default)");
  cmd->add_option("--jobs", args.jobs, "worker pool bound (0 = hardware)");
  cmd->add_option("--tol", args.tol, "override integrator rtol (atol = rtol/100)");
  cmd->add_option("--format", args.format, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
  cmd->add_option("--samples", args.samples, "recording samples per pulse");
  cmd->add_flag("--dense", args.dense, "use the dense grid of sweep presets");
  cmd->add_flag("--trajectories", args.trajectories, "also export per-input trajectories");
}

json load_input(const CommonArgs& args, const std::string& expected_kind) {
  if (!args.config_path.empty()) return read_json_file(args.config_path);
  const Preset& p = preset(args.preset_name);
  // pulse/gate/bell presets are all plain protocol configs and are
  // interchangeable across those three subcommands
  const bool protocol_kind =
      p.kind == "pulse" || p.kind == "gate" || p.kind == "bell";
  const bool protocol_wanted = expected_kind == "pulse" ||
                               expected_kind == "gate" || expected_kind == "bell";
  if (!(p.kind == expected_kind || (protocol_kind && protocol_wanted))) {
    throw std::invalid_argument("preset '" + p.name + "' is a " + p.kind +
                                " preset, not usable with this subcommand");
  }
  return p.build(args.dense);
}

fs::path prepare_out_dir(const CommonArgs& args) {
  fs::path dir = args.out_dir;
  if (const char* env = std::getenv("RYDCZ_OUT_DIR"); env && *env && args.out_dir == "out") {
    dir = env;
  }
  fs::create_directories(dir);
  return dir;
}

void apply_overrides(ProtocolConfig& config, const CommonArgs& args) {
  if (args.jobs != 0) config.jobs = args.jobs;
  if (args.tol > 0.0) {
    config.integrator.rtol = args.tol;
    config.integrator.atol = args.tol / 100.0;
  }
  if (args.samples > 0) config.samples_per_pulse = args.samples;
}

bool wants_csv(const CommonArgs& args) { return args.format != "json"; }
bool wants_json(const CommonArgs& args) { return args.format != "csv"; }

int cmd_pulse(const CommonArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  ProtocolConfig config = load_protocol_config(load_input(args, "pulse"));
  apply_overrides(config, args);
  const fs::path dir = prepare_out_dir(args);
  const ProfileTable table = sample_profiles(config, config.samples_per_pulse);

  Manifest manifest("pulse", dump_protocol_config(config));
  if (wants_csv(args)) {
    for (std::size_t c = 1; c < table.columns.size(); ++c) {
      // one two-column file per curve: omega0.csv, omega_cd.csv, delta.csv
      std::string name = table.columns[c];
      name = name.substr(0, name.rfind("_rad_per_us"));
      const fs::path path = dir / (name + ".csv");
      write_text_file(path, profile_column_csv(table, table.columns[c]));
      manifest.add_output(path, "csv");
    }
  }
  if (wants_json(args)) {
    json j;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      json column = json::array();
      for (const auto& row : table.rows) column.push_back(row[c]);
      j[table.columns[c]] = column;
    }
    j["config"] = dump_protocol_config(config);
    const fs::path path = dir / "profiles.json";
    write_json_file(path, j);
    manifest.add_output(path, "json");
  }
  manifest.set_wall_seconds(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  manifest.write(dir);
  std::cout << "pulse profiles written to " << dir << "\n";
  return 0;
}

int cmd_gate(const CommonArgs& args) {
  ProtocolConfig config = load_protocol_config(load_input(args, "gate"));
  apply_overrides(config, args);
  const fs::path dir = prepare_out_dir(args);

  const GateRun run = run_cz(config);
  Manifest manifest("gate", dump_protocol_config(config));
  const fs::path path = dir / "gate.json";
  write_json_file(path, gate_run_json(run, config));
  manifest.add_output(path, "json");
  if (args.trajectories) {
    // re-run per input sequentially to export population time series
    const TwoAtomSystem system = config.system();
    for (const InputOutcome& outcome : run.outcomes) {
      ProtocolConfig one = config;
      one.jobs = 1;
      // cheap: reuse the stored final state only for labels; re-propagation
      // for the trajectory is the price of not storing all snapshots
      const DriveProfile drive = one.drive();
      const HamiltonianFn h = [&system, drive](double t, ComplexMatrix& out) {
        assemble_two_atom_hamiltonian(system, drive, t, out);
      };
      ComplexVector psi0 = ComplexVector::Zero(system.dim());
      psi0[system.state_index(outcome.input.substr(0, 1), outcome.input.substr(1, 1))] = 1.0;
      Trajectory traj;
      if (config.has_decay()) {
        const auto ops = lindblad_operators(system);
        traj = propagate_lindblad(h, ops, psi0 * psi0.adjoint(), drive.begin(),
                                  drive.end(), one.integrator,
                                  2 * one.samples_per_pulse, one.equation_sign,
                                  drive.seams());
      } else {
        traj = propagate_schrodinger(h, psi0, drive.begin(), drive.end(),
                                     one.integrator, 2 * one.samples_per_pulse,
                                     one.equation_sign, drive.seams());
      }
      if (wants_csv(args)) {
        const fs::path tpath = dir / ("trajectory_" + outcome.input + ".csv");
        write_text_file(tpath, trajectory_csv(traj, system));
        manifest.add_output(tpath, "csv");
      }
      if (wants_json(args)) {
        const fs::path tpath = dir / ("trajectory_" + outcome.input + ".json");
        write_json_file(tpath, trajectory_json(traj, system, one));
        manifest.add_output(tpath, "json");
      }
    }
  }
  manifest.set_wall_seconds(run.wall_seconds);
  manifest.write(dir);
  if (run.phases_defined) {
    std::cout << "phi01 = " << run.phi01 << " rad, phi11 = " << run.phi11
              << " rad, conditional phase = " << cz_conditional_phase(run)
              << " rad\n";
  }
  std::cout << "gate run written to " << path << "\n";
  return 0;
}

int cmd_bell(const CommonArgs& args) {
  ProtocolConfig config = load_protocol_config(load_input(args, "bell"));
  apply_overrides(config, args);
  const fs::path dir = prepare_out_dir(args);

  const BellScore score = prepare_bell(config);
  Manifest manifest("bell", dump_protocol_config(config));
  const fs::path path = dir / "bell.json";
  write_json_file(path, bell_score_json(score, config));
  manifest.add_output(path, "json");
  manifest.set_wall_seconds(score.wall_seconds);
  manifest.write(dir);
  std::cout.precision(6);
  std::cout << std::fixed << "bell fidelity F = " << score.fidelity
            << " (uncorrected " << score.fidelity_uncorrected << "), written to "
            << path << "\n";
  return 0;
}

int cmd_sweep(const CommonArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepSpec spec = load_sweep_spec(load_input(args, "sweep"));
  apply_overrides(spec.base, args);
  if (args.jobs != 0) spec.jobs = args.jobs;
  const fs::path dir = prepare_out_dir(args);

  const SweepResult result = run_sweep(spec);
  Manifest manifest("sweep", dump_sweep_spec(spec));
  if (wants_csv(args)) {
    const fs::path path = dir / "sweep.csv";
    write_text_file(path, sweep_csv(result));
    manifest.add_output(path, "csv");
    if (result.parameters.size() == 2) {
      const fs::path grid = dir / "sweep_grid.csv";
      write_text_file(grid, sweep_grid_csv(result));
      manifest.add_output(grid, "csv");
    }
  }
  if (wants_json(args)) {
    const fs::path path = dir / "sweep.json";
    write_json_file(path, sweep_json(result, spec));
    manifest.add_output(path, "json");
  }
  manifest.set_wall_seconds(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  manifest.write(dir);

  int failures = 0;
  for (const SweepPoint& p : result.points) {
    if (!p.error.empty()) ++failures;
  }
  std::cout << result.points.size() << " points written to " << dir;
  if (failures) std::cout << " (" << failures << " failed; see error column)";
  std::cout << "\n";
  return failures == 0 ? 0 : 1;
}

int cmd_optimize(const CommonArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  OptimizerSpec spec = load_optimizer_spec(load_input(args, "optimize"));
  apply_overrides(spec.base, args);
  const fs::path dir = prepare_out_dir(args);

  const OptimizeResult result = optimize(spec);
  Manifest manifest("optimize", dump_optimizer_spec(spec));
  const fs::path path = dir / "optimize.json";
  write_json_file(path, optimize_json(result, spec));
  manifest.add_output(path, "json");
  manifest.set_wall_seconds(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  manifest.write(dir);
  std::cout << "best objective " << result.best_value << " after "
            << result.evaluations << " evaluations"
            << (result.converged ? "" : " (evaluation budget exhausted)")
            << ", written to " << path << "\n";
  return 0;
}

int cmd_presets(const std::string& action, const std::string& name) {
  if (action == "list" || action.empty()) {
    for (const Preset& p : presets()) {
      std::cout << p.name << "  [" << p.kind << "]  " << p.description << "\n";
    }
    return 0;
  }
  if (action == "show") {
    std::cout << preset(name).build(false).dump(2) << "\n";
    return 0;
  }
  std::cerr << "unknown presets action '" << action << "' (list | show)\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rydberg-blockade CZ gates driven by counterdiabatic ARP pulses"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonArgs args;
  auto* pulse = app.add_subcommand("pulse", "export pulse/CD/detuning profiles");
  add_common(pulse, args);
  auto* gate = app.add_subcommand("gate", "run the CZ protocol over the basis inputs");
  add_common(gate, args);
  auto* bell = app.add_subcommand("bell", "prepare and score the Bell state");
  add_common(bell, args);
  auto* sweep = app.add_subcommand("sweep", "evaluate an observable over a grid");
  add_common(sweep, args);
  auto* optimize = app.add_subcommand("optimize", "derivative-free pulse tuning");
  add_common(optimize, args);

  auto* presets_cmd = app.add_subcommand("presets", "list or show built-in presets");
  std::string action = "list", preset_name;
  presets_cmd->add_option("action", action, "list | show");
  presets_cmd->add_option("name", preset_name, "preset name for 'show'");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pulse->parsed()) return cmd_pulse(args);
    if (gate->parsed()) return cmd_gate(args);
    if (bell->parsed()) return cmd_bell(args);
    if (sweep->parsed()) return cmd_sweep(args);
    if (optimize->parsed()) return cmd_optimize(args);
    if (presets_cmd->parsed()) return cmd_presets(action, preset_name);
  } catch (const std::exception& err) {
    const json diagnostic = {{"error", {{"what", err.what()}}}};
    std::cerr << diagnostic.dump() << "\n";
    return 1;
  }
  return 2;
}
