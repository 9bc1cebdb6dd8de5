// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "rydcz/gate.hpp"
#include "rydcz/sweep.hpp"

// Serialization of results (CSV primary, JSON with metadata) and the run
// manifest that pairs every output file with enough context to re-run it.

namespace rydcz {

std::string format_full(double v);  // round-trip-exact decimal form

// Pulse/CD/detuning profile sampling for export.
struct ProfileTable {
  std::vector<std::string> columns;  // first column is t_us
  std::vector<std::vector<double>> rows;
};
ProfileTable sample_profiles(const ProtocolConfig& config, int samples);

std::string to_csv(const ProfileTable& table);
// Two-column (t_us, value) slice of one profile column.
std::string profile_column_csv(const ProfileTable& table, const std::string& column);

std::string trajectory_csv(const Trajectory& trajectory, const TwoAtomSystem& system);
nlohmann::json trajectory_json(const Trajectory& trajectory,
                               const TwoAtomSystem& system,
                               const ProtocolConfig& config);

nlohmann::json gate_run_json(const GateRun& run, const ProtocolConfig& config);
nlohmann::json bell_score_json(const BellScore& score, const ProtocolConfig& config);

std::string sweep_csv(const SweepResult& result);
// Gridded matrix layout for 2-axis sweeps (heat maps).
std::string sweep_grid_csv(const SweepResult& result);
nlohmann::json sweep_json(const SweepResult& result, const SweepSpec& spec);
SweepResult sweep_from_csv(const std::string& csv);  // inverse of sweep_csv

nlohmann::json optimize_json(const OptimizeResult& result, const OptimizerSpec& spec);

class Manifest {
 public:
  Manifest(std::string command, nlohmann::json config_echo);
  void add_output(const std::filesystem::path& path, const std::string& kind);
  void set_wall_seconds(double seconds);
  nlohmann::json to_json() const;
  void write(const std::filesystem::path& directory) const;

 private:
  std::string command_;
  std::string created_;
  std::shared_ptr<nlohmann::json> config_;  // json_fwd-friendly storage
  std::vector<std::pair<std::string, std::string>> outputs_;
  double wall_seconds_ = 0.0;
};

void write_text_file(const std::filesystem::path& path, const std::string& content);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace rydcz
