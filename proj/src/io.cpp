// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include "rydcz/io.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "rydcz/config.hpp"
#include "rydcz/units.hpp"
#include "rydcz/version.hpp"

namespace rydcz {

using nlohmann::json;

std::string format_full(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

ProfileTable sample_profiles(const ProtocolConfig& config, int samples) {
  if (samples < 2) throw std::invalid_argument("profile export needs >= 2 samples");
  ProfileTable table;
  const DriveProfile drive = config.drive();
  const double t0 = drive.begin();
  const double t1 = drive.end();
  if (!(t1 > t0)) throw std::invalid_argument("empty time range for profile export");
  const int total = 2 * samples;  // per pulse, two pulses/segments per sequence

  if (config.protocol == Protocol::cd_arp) {
    table.columns = {"t_us", "omega0_rad_per_us", "omega_cd_rad_per_us",
                     "delta_rad_per_us"};
    PulseSequence seq = PulseSequence::double_arp(
        config.omega_max, config.delta0, config.duration, config.second_pulse_sign);
    for (int i = 0; i <= total; ++i) {
      const double t = t0 + (t1 - t0) * i / total;
      table.rows.push_back({t, seq.omega0(t), seq.cd(t), seq.delta(t)});
    }
  } else {
    table.columns = {"t_us", "omega1_re_rad_per_us", "omega1_im_rad_per_us",
                     "delta_rad_per_us"};
    for (int i = 0; i <= total; ++i) {
      const double t = t0 + (t1 - t0) * i / total;
      const DriveSample s = drive.at(t);
      table.rows.push_back({t, s.step1.real(), s.step1.imag(), s.delta_r});
    }
  }
  return table;
}

std::string to_csv(const ProfileTable& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << format_full(row[c]);
    }
    out << "\n";
  }
  return out.str();
}

std::string profile_column_csv(const ProfileTable& table, const std::string& column) {
  std::size_t index = table.columns.size();
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    if (table.columns[c] == column) index = c;
  }
  if (index == table.columns.size()) {
    throw std::invalid_argument("no profile column '" + column + "'");
  }
  std::ostringstream out;
  out << "t_us," << column << "\n";
  for (const auto& row : table.rows) {
    out << format_full(row[0]) << "," << format_full(row[index]) << "\n";
  }
  return out.str();
}

std::string trajectory_csv(const Trajectory& trajectory, const TwoAtomSystem& system) {
  std::ostringstream out;
  out << "t_us";
  for (int i = 0; i < system.dim(); ++i) out << ",P_" << system.state_label(i);
  out << ",leakage\n";
  const LevelScheme& scheme = system.scheme();
  std::vector<bool> is_kept_level(system.dim(), false);
  {
    const int i0 = scheme.index("0"), i1 = scheme.index("1");
    const int ir = scheme.rydberg_index();
    for (int a : {i0, i1, ir}) {
      for (int b : {i0, i1, ir}) {
        const int idx = system.state_index(a, b);
        if (idx >= 0) is_kept_level[idx] = true;
      }
    }
  }
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << format_full(trajectory.times[k]);
    double kept = 0.0;
    for (int i = 0; i < system.dim(); ++i) {
      const double p = trajectory.density
                           ? trajectory.populations[k][i]
                           : std::norm(trajectory.states[k][i]);
      if (is_kept_level[i]) kept += p;
      out << "," << format_full(p);
    }
    out << "," << format_full(1.0 - kept) << "\n";
  }
  return out.str();
}

nlohmann::json trajectory_json(const Trajectory& trajectory,
                               const TwoAtomSystem& system,
                               const ProtocolConfig& config) {
  json pops = json::object();
  for (int i = 0; i < system.dim(); ++i) {
    json column = json::array();
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
      column.push_back(trajectory.density ? trajectory.populations[k][i]
                                          : std::norm(trajectory.states[k][i]));
    }
    pops[system.state_label(i)] = column;
  }
  return {{"t_us", trajectory.times},
          {"populations", pops},
          {"density", trajectory.density},
          {"steps_accepted", trajectory.steps_accepted},
          {"config", dump_protocol_config(config)}};
}

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

json tolerance_metadata(const ProtocolConfig& config) {
  return {{"rtol", config.integrator.rtol},
          {"atol", config.integrator.atol},
          {"samples_per_pulse", config.samples_per_pulse}};
}

}  // namespace

json gate_run_json(const GateRun& run, const ProtocolConfig& config) {
  json inputs = json::object();
  for (const InputOutcome& o : run.outcomes) {
    json oj = {{"return_population", o.return_population},
               {"leakage", o.leakage}};
    if (o.phase_defined) {
      oj["phase_rad"] = o.phase;
      oj["phase_continuous"] = o.phase_continuous;
    } else {
      oj["phase_rad"] = nullptr;
    }
    inputs[o.input] = oj;
  }
  json j = {{"inputs", inputs},
            {"simulated_span_us", run.simulated_span},
            {"wall_seconds", run.wall_seconds},
            {"config", dump_protocol_config(config)},
            {"tolerances", tolerance_metadata(config)}};
  if (run.phases_defined) {
    j["phases_rad"] = {{"phi00", run.phi00},
                       {"phi01", run.phi01},
                       {"phi10", run.phi10},
                       {"phi11", run.phi11}};
    j["cz_conditional_phase_rad"] = cz_conditional_phase(run);
  }
  return j;
}

json bell_score_json(const BellScore& score, const ProtocolConfig& config) {
  return {{"fidelity", round6(score.fidelity)},
          {"fidelity_unrounded", score.fidelity},
          {"fidelity_uncorrected", round6(score.fidelity_uncorrected)},
          {"infidelity", 1.0 - score.fidelity},
          {"correction_phase_rad", score.correction_phase},
          {"p00", score.p00},
          {"p11", score.p11},
          {"coherence_00_11", score.coherence_00_11},
          {"leakage", score.leakage},
          {"wall_seconds", score.wall_seconds},
          {"config", dump_protocol_config(config)},
          {"tolerances", tolerance_metadata(config)}};
}

namespace {

std::string unit_suffix(ParameterUnit unit) {
  switch (unit) {
    case ParameterUnit::angular: return "_rad_per_us";
    case ParameterUnit::time: return "_us";
    case ParameterUnit::angle: return "_rad";
  }
  return {};
}

std::string column_name(const std::string& parameter) {
  std::string name = parameter;
  for (char& ch : name) {
    if (ch == '.') ch = '_';
  }
  return name + unit_suffix(parameter_unit(parameter));
}

}  // namespace

std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  for (const std::string& p : result.parameters) out << column_name(p) << ",";
  out << to_string(result.observable) << ",error\n";
  for (const SweepPoint& point : result.points) {
    for (double c : point.coordinates) out << format_full(c) << ",";
    out << (point.error.empty() ? format_full(point.value) : "nan") << ",";
    // commas in error strings would break the row
    std::string err = point.error;
    for (char& ch : err) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out << err << "\n";
  }
  return out.str();
}

SweepResult sweep_from_csv(const std::string& csv) {
  SweepResult result;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty sweep CSV");
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) header.push_back(cell);
  }
  if (header.size() < 3) throw std::invalid_argument("sweep CSV header too short");
  const std::size_t n_axes = header.size() - 2;
  result.observable = observable_from_string(header[n_axes]);
  for (std::size_t i = 0; i < n_axes; ++i) result.parameters.push_back(header[i]);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    SweepPoint point;
    for (std::size_t i = 0; i < n_axes; ++i) {
      std::getline(ls, cell, ',');
      point.coordinates.push_back(std::stod(cell));
    }
    std::getline(ls, cell, ',');
    point.value = std::stod(cell);
    std::getline(ls, point.error);
    result.points.push_back(std::move(point));
  }
  return result;
}

std::string sweep_grid_csv(const SweepResult& result) {
  if (result.parameters.size() != 2) {
    throw std::invalid_argument("grid layout is defined for 2-axis sweeps");
  }
  // recover the two axes from the lexicographic row order
  std::vector<double> axis0, axis1;
  for (const SweepPoint& p : result.points) {
    if (axis1.empty() || p.coordinates[0] == result.points.front().coordinates[0]) {
      if (axis1.empty() || p.coordinates[1] != axis1.front()) {
        axis1.push_back(p.coordinates[1]);
      }
    }
  }
  const std::size_t n1 = axis1.size();
  for (std::size_t i = 0; i < result.points.size(); i += n1) {
    axis0.push_back(result.points[i].coordinates[0]);
  }
  std::ostringstream out;
  out << column_name(result.parameters[0]) << "\\" << column_name(result.parameters[1]);
  for (double v : axis1) out << "," << format_full(v);
  out << "\n";
  for (std::size_t i = 0; i < axis0.size(); ++i) {
    out << format_full(axis0[i]);
    for (std::size_t j = 0; j < n1; ++j) {
      out << "," << format_full(result.points[i * n1 + j].value);
    }
    out << "\n";
  }
  return out.str();
}

json sweep_json(const SweepResult& result, const SweepSpec& spec) {
  json points = json::array();
  for (const SweepPoint& p : result.points) {
    json pj = {{"coordinates", p.coordinates}, {"value", p.value}};
    if (!p.error.empty()) pj["error"] = p.error;
    points.push_back(pj);
  }
  return {{"observable", std::string(to_string(result.observable))},
          {"parameters", result.parameters},
          {"points", points},
          {"spec", dump_sweep_spec(spec)}};
}

json optimize_json(const OptimizeResult& result, const OptimizerSpec& spec) {
  json trace = json::array();
  for (const auto& [x, f] : result.trace) {
    trace.push_back({{"x", x}, {"value", f}});
  }
  return {{"best", result.best},
          {"best_value", result.best_value},
          {"evaluations", result.evaluations},
          {"converged", result.converged},
          {"trace", trace},
          {"spec", dump_optimizer_spec(spec)}};
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Manifest::Manifest(std::string command, json config_echo)
    : command_(std::move(command)),
      created_(utc_now()),
      config_(std::make_shared<json>(std::move(config_echo))) {}

void Manifest::add_output(const std::filesystem::path& path, const std::string& kind) {
  outputs_.emplace_back(path.string(), kind);
}

void Manifest::set_wall_seconds(double seconds) { wall_seconds_ = seconds; }

json Manifest::to_json() const {
  json outputs = json::array();
  for (const auto& [path, kind] : outputs_) {
    outputs.push_back({{"path", path}, {"kind", kind}});
  }
  return {{"artifact", "rydcz"},
          {"version", std::string(kVersion)},
          {"created_utc", created_},
          {"command", command_},
          {"config", *config_},
          {"outputs", outputs},
          {"wall_seconds", wall_seconds_}};
}

void Manifest::write(const std::filesystem::path& directory) const {
  write_json_file(directory / "manifest.json", to_json());
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace rydcz
