// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "rydcz/config.hpp"
#include "rydcz/io.hpp"
#include "rydcz/units.hpp"

using namespace rydcz;
using nlohmann::json;
using units::two_pi;

namespace {

json minimal_config() {
  return {{"scheme", "single_photon"},
          {"pulse",
           {{"omega_max", "20 MHz_over_2pi"},
            {"delta0", "10 MHz_over_2pi"},
            {"duration", "0.05 us"}}}};
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal protocol config") {
  const ProtocolConfig c = load_protocol_config(minimal_config());
  CHECK(c.scheme == SchemeKind::single_photon);
  CHECK(c.protocol == Protocol::cd_arp);
  CHECK(c.omega_max == doctest::Approx(two_pi * 20.0).epsilon(1e-15));
  CHECK(c.duration == 0.05);
  CHECK(c.blockade.is_infinite);
  CHECK(c.decay.empty());
  CHECK(c.equation_sign == EquationSign::plus_i);
  CHECK(c.integrator.rtol == 1e-10);
  CHECK(c.integrator.atol == 1e-12);
  CHECK(c.samples_per_pulse == 2000);
}

TEST_CASE("species and extra decay channels") {
  json j = minimal_config();
  j["species"] = "Cs107p";
  j["blockade"] = "4 GHz_over_2pi";
  ProtocolConfig c = load_protocol_config(j);
  REQUIRE(c.decay.size() == 1);
  CHECK(c.decay[0].from == "r");
  CHECK(c.decay[0].gamma == doctest::Approx(1.0 / 540.0).epsilon(1e-15));
  CHECK_FALSE(c.blockade.is_infinite);
  CHECK(c.blockade.strength == doctest::Approx(two_pi * 4000.0).epsilon(1e-15));

  j["scheme"] = "two_photon";
  j["two_photon"] = {{"detuning", "-4 GHz_over_2pi"}};
  j["decay"] = {{"channels",
                 json::array({{{"from", "p"},
                               {"tau", "0.155 us"},
                               {"branches", {{"0", 0.0625}, {"1", 0.0625}, {"d", 0.875}}}}})}};
  c = load_protocol_config(j);
  REQUIRE(c.decay.size() == 2);
  CHECK(c.decay[1].from == "p");
  CHECK(c.decay[1].gamma == doctest::Approx(1.0 / 0.155).epsilon(1e-12));

  // decay.enabled = false drops everything
  j["decay"]["enabled"] = false;
  c = load_protocol_config(j);
  CHECK(c.decay.empty());
}

TEST_CASE("schema diagnostics name the offending field") {
  json j = minimal_config();
  j["pulse"]["omega_max"] = "20 MHz";  // missing the _over_2pi tag
  CHECK_THROWS_WITH_AS(load_protocol_config(j),
                       doctest::Contains("pulse.omega_max"), ConfigError);

  json no_scheme = minimal_config();
  no_scheme.erase("scheme");
  CHECK_THROWS_WITH_AS(load_protocol_config(no_scheme),
                       doctest::Contains("scheme"), ConfigError);

  json bad_sign = minimal_config();
  bad_sign["pulse"]["second_pulse_sign"] = 0.5;
  CHECK_THROWS_AS(load_protocol_config(bad_sign), ConfigError);

  json bad_species = minimal_config();
  bad_species["species"] = "Na";
  CHECK_THROWS_WITH_AS(load_protocol_config(bad_species),
                       doctest::Contains("species"), ConfigError);

  json bad_branches = minimal_config();
  bad_branches["decay"] = {{"channels",
                            json::array({{{"from", "r"},
                                          {"gamma", "0.1 per_us"},
                                          {"branches", {{"d", 0.5}}}}})}};
  // branching that does not close to 1 surfaces when the scheme is built
  const ProtocolConfig c = load_protocol_config(bad_branches);
  CHECK_THROWS_AS(c.system(), std::invalid_argument);
}

TEST_CASE("conventions and bell options") {
  json j = minimal_config();
  j["conventions"] = {{"master_equation_sign", "minus_i"},
                      {"two_photon_sign", "flipped"}};
  j["bell"] = {{"phase_correction", {{"phi", "0.25 rad"}}},
               {"hadamard_on", "control"}};
  const ProtocolConfig c = load_protocol_config(j);
  CHECK(c.equation_sign == EquationSign::minus_i);
  CHECK(c.two_photon_flipped);
  CHECK(c.phase_correction == PhaseCorrectionMode::explicit_value);
  CHECK(c.explicit_phase == 0.25);
  CHECK(c.hadamard_on == 0);

  j["bell"]["phase_correction"] = "none";
  CHECK(load_protocol_config(j).phase_correction == PhaseCorrectionMode::none);
  j["conventions"]["master_equation_sign"] = "upside_down";
  CHECK_THROWS_AS(load_protocol_config(j), ConfigError);
}

TEST_CASE("config echo round-trips") {
  json j = minimal_config();
  j["species"] = "Rb113p";
  j["blockade"] = "1 GHz_over_2pi";
  j["integrator"] = {{"rtol", 1e-9}, {"atol", 1e-11}, {"samples_per_pulse", 500}};
  const ProtocolConfig c = load_protocol_config(j);
  const ProtocolConfig back = load_protocol_config(dump_protocol_config(c));
  CHECK(back.omega_max == doctest::Approx(c.omega_max).epsilon(1e-14));
  CHECK(back.delta0 == doctest::Approx(c.delta0).epsilon(1e-14));
  CHECK(back.duration == c.duration);
  CHECK(back.blockade.is_infinite == c.blockade.is_infinite);
  CHECK(back.blockade.strength == doctest::Approx(c.blockade.strength).epsilon(1e-14));
  CHECK(back.decay.size() == c.decay.size());
  CHECK(back.decay[0].gamma == doctest::Approx(c.decay[0].gamma).epsilon(1e-14));
  CHECK(back.integrator.rtol == c.integrator.rtol);
  CHECK(back.samples_per_pulse == c.samples_per_pulse);
}

TEST_CASE("sweep spec parsing") {
  json j = {{"observable", "bell_infidelity"},
            {"axes",
             json::array({{{"parameter", "blockade"},
                           {"values", json::array({"2 GHz_over_2pi", "4 GHz_over_2pi"})}},
                          {{"parameter", "pulse.omega_max"},
                           {"linspace",
                            {{"from", "15 MHz_over_2pi"},
                             {"to", "25 MHz_over_2pi"},
                             {"count", 5}}}}})},
            {"config", minimal_config()}};
  const SweepSpec spec = load_sweep_spec(j);
  REQUIRE(spec.axes.size() == 2);
  CHECK(spec.axes[0].values.size() == 2);
  CHECK(spec.axes[1].values.size() == 5);
  CHECK(spec.axes[1].values.front() == doctest::Approx(two_pi * 15.0));
  CHECK(spec.axes[1].values.back() == doctest::Approx(two_pi * 25.0));

  json bad = j;
  bad["axes"][0]["parameter"] = "nonsense.path";
  CHECK_THROWS_WITH_AS(load_sweep_spec(bad), doctest::Contains("axes[0]"), ConfigError);
  bad = j;
  bad.erase("axes");
  CHECK_THROWS_AS(load_sweep_spec(bad), ConfigError);
}

TEST_CASE("optimizer spec parsing") {
  json j = {{"objective", "bell_infidelity"},
            {"max_evaluations", 60},
            {"parameters",
             json::array({{{"path", "pulse.omega_max"},
                           {"initial", "18 MHz_over_2pi"},
                           {"lower", "15 MHz_over_2pi"},
                           {"upper", "25 MHz_over_2pi"},
                           {"step", "1 MHz_over_2pi"}}})},
            {"config", minimal_config()}};
  const OptimizerSpec spec = load_optimizer_spec(j);
  CHECK(spec.max_evaluations == 60);
  REQUIRE(spec.parameters.size() == 1);
  CHECK(spec.parameters[0].initial == doctest::Approx(two_pi * 18.0));
  CHECK(spec.parameters[0].step == doctest::Approx(two_pi * 1.0));
}

TEST_CASE("presets all build and load") {
  CHECK_FALSE(presets().empty());
  for (const Preset& p : presets()) {
    const json j = p.build(false);
    const json dense = p.build(true);
    if (p.kind == "sweep") {
      CHECK_NOTHROW(load_sweep_spec(j));
      CHECK_NOTHROW(load_sweep_spec(dense));
    } else {
      CHECK_NOTHROW(load_protocol_config(j));
      CHECK_NOTHROW(load_protocol_config(dense));
    }
  }
  CHECK(preset("fig3b").kind == "sweep");
  CHECK_THROWS_AS(preset("fig99"), std::invalid_argument);
}

TEST_CASE("json file reading diagnostics") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "rydcz_test_cfg";
  fs::create_directories(dir);
  const fs::path good = dir / "good.json";
  std::ofstream(good) << minimal_config().dump();
  CHECK_NOTHROW(read_json_file(good.string()));
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK_THROWS_AS(read_json_file(bad.string()), ConfigError);
  CHECK_THROWS_AS(read_json_file((dir / "missing.json").string()), ConfigError);
}

TEST_CASE("profile table and manifest") {
  const ProtocolConfig c = load_protocol_config(minimal_config());
  const ProfileTable table = sample_profiles(c, 100);
  CHECK(table.columns.front() == "t_us");
  CHECK(table.rows.size() == 201);
  CHECK(table.rows.front()[0] == -0.05);
  CHECK(table.rows.back()[0] == 0.05);
  const std::string csv = profile_column_csv(table, "omega0_rad_per_us");
  CHECK(csv.substr(0, 22) == "t_us,omega0_rad_per_us");
  CHECK_THROWS_AS(profile_column_csv(table, "nope"), std::invalid_argument);
  CHECK_THROWS_AS(sample_profiles(c, 1), std::invalid_argument);

  Manifest manifest("test", dump_protocol_config(c));
  manifest.add_output("out/a.csv", "csv");
  manifest.set_wall_seconds(1.5);
  const json j = manifest.to_json();
  CHECK(j["artifact"] == "rydcz");
  CHECK(j["outputs"].size() == 1);
  CHECK(j["config"]["scheme"] == "single_photon");
  CHECK(j["wall_seconds"] == 1.5);
}

TEST_CASE("gate and bell serialization") {
  ProtocolConfig c = load_protocol_config(minimal_config());
  c.omega_max = 0.0;  // identity gate, instant to simulate
  c.jobs = 1;
  const GateRun run = run_cz(c);
  const json gj = gate_run_json(run, c);
  CHECK(gj["inputs"].contains("00"));
  CHECK(gj["inputs"]["01"]["return_population"].get<double>() ==
        doctest::Approx(1.0));
  CHECK(gj["phases_rad"]["phi11"].get<double>() == doctest::Approx(0.0));
  CHECK(gj.contains("cz_conditional_phase_rad"));
  CHECK(gj["config"]["scheme"] == "single_photon");

  const BellScore score = prepare_bell(c);
  const json bj = bell_score_json(score, c);
  CHECK(bj.contains("fidelity"));
  CHECK(bj.contains("fidelity_uncorrected"));
  CHECK(bj.contains("leakage"));
  // six-decimal rounding contract
  const double rounded = bj["fidelity"].get<double>();
  CHECK(rounded == doctest::Approx(score.fidelity).epsilon(1e-6));
  CHECK(std::abs(rounded * 1e6 - std::round(rounded * 1e6)) < 1e-6);
}

TEST_CASE("trajectory serialization") {
  ProtocolConfig c = load_protocol_config(minimal_config());
  c.samples_per_pulse = 10;
  const TwoAtomSystem system = c.system();
  const DriveProfile drive = c.drive();
  const HamiltonianFn h = [&system, drive](double t, ComplexMatrix& m) {
    assemble_two_atom_hamiltonian(system, drive, t, m);
  };
  ComplexVector psi0 = ComplexVector::Zero(system.dim());
  psi0[system.state_index("1", "1")] = 1.0;
  const Trajectory traj =
      propagate_schrodinger(h, psi0, drive.begin(), drive.end(), c.integrator,
                            20, c.equation_sign, drive.seams());

  const std::string csv = trajectory_csv(traj, system);
  CHECK(csv.rfind("t_us,P_00", 0) == 0);
  CHECK(csv.find(",leakage") != std::string::npos);

  const json j = trajectory_json(traj, system, c);
  CHECK(j["t_us"].size() == traj.times.size());
  CHECK(j["populations"]["11"].size() == traj.times.size());
  CHECK(j["populations"]["11"][0].get<double>() == doctest::Approx(1.0));
  CHECK(j["density"] == false);
  CHECK(j["config"]["pulse"].contains("omega_max"));
}

TEST_CASE("manifest writes to disk") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "rydcz_test_manifest";
  fs::create_directories(dir);
  Manifest manifest("bell", dump_protocol_config(load_protocol_config(minimal_config())));
  manifest.add_output(dir / "bell.json", "json");
  manifest.write(dir);
  const json j = read_json_file((dir / "manifest.json").string());
  CHECK(j["command"] == "bell");
  CHECK(j["outputs"][0]["kind"] == "json");
  // the echoed config must itself be loadable: a manifest re-runs the result
  CHECK_NOTHROW(load_protocol_config(j["config"]));
}

}  // TEST_SUITE
