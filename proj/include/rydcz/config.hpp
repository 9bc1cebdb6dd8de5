// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <nlohmann/json_fwd.hpp>
#include <stdexcept>
#include <string>

#include "rydcz/sweep.hpp"

// JSON configuration with explicit unit tags ("MHz_over_2pi", "GHz_over_2pi",
// "us", "rad", "per_us"); dimensional quantities are never bare numbers.

namespace rydcz {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what) {}
};

nlohmann::json read_json_file(const std::string& path);

ProtocolConfig load_protocol_config(const nlohmann::json& j);
nlohmann::json dump_protocol_config(const ProtocolConfig& config);

SweepSpec load_sweep_spec(const nlohmann::json& j);
nlohmann::json dump_sweep_spec(const SweepSpec& spec);

OptimizerSpec load_optimizer_spec(const nlohmann::json& j);
nlohmann::json dump_optimizer_spec(const OptimizerSpec& spec);

// Named, versioned presets.  `kind` selects the CLI subcommand the preset is
// meant for: pulse, gate, bell, sweep or optimize.
struct Preset {
  std::string name;
  std::string kind;
  std::string description;
  nlohmann::json (*build)(bool dense);
};

const std::vector<Preset>& presets();
const Preset& preset(const std::string& name);  // throws on unknown name

}  // namespace rydcz
