// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include "rydcz/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "rydcz/units.hpp"

namespace rydcz {

using nlohmann::json;

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open file");
  try {
    return json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& err) {
    throw ConfigError(path, err.what());
  }
}

namespace {

const json* find(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string text_at(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where, "expected a '<number> <unit>' string");
  return j.get<std::string>();
}

double angular_at(const json& j, const std::string& where) {
  try {
    return units::angular_frequency(text_at(j, where));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(where, err.what());
  }
}

double time_at(const json& j, const std::string& where) {
  try {
    return units::time_us(text_at(j, where));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(where, err.what());
  }
}

double angle_at(const json& j, const std::string& where) {
  try {
    return units::angle_rad(text_at(j, where));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(where, err.what());
  }
}

double rate_at(const json& j, const std::string& where) {
  try {
    return units::rate_per_us(text_at(j, where));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(where, err.what());
  }
}

double parse_by_unit(const json& j, ParameterUnit unit, const std::string& where) {
  switch (unit) {
    case ParameterUnit::angular: return angular_at(j, where);
    case ParameterUnit::time: return time_at(j, where);
    case ParameterUnit::angle: return angle_at(j, where);
  }
  throw ConfigError(where, "bad parameter unit");
}

DecayChannel channel_from_json(const json& j, const std::string& where) {
  DecayChannel ch;
  const json* from = find(j, "from");
  if (!from || !from->is_string()) throw ConfigError(where, "missing 'from' level label");
  ch.from = from->get<std::string>();
  if (const json* tau = find(j, "tau")) {
    const double t = time_at(*tau, where + ".tau");
    if (t <= 0.0) throw ConfigError(where + ".tau", "lifetime must be > 0");
    ch.gamma = 1.0 / t;
  } else if (const json* gamma = find(j, "gamma")) {
    ch.gamma = rate_at(*gamma, where + ".gamma");
  } else {
    throw ConfigError(where, "needs either 'tau' or 'gamma'");
  }
  const json* branches = find(j, "branches");
  if (!branches || !branches->is_object()) {
    throw ConfigError(where, "missing 'branches' object");
  }
  for (const auto& [label, value] : branches->items()) {
    if (!value.is_number()) {
      throw ConfigError(where + ".branches." + label, "expected a number");
    }
    ch.branches.emplace_back(label, value.get<double>());
  }
  return ch;
}

json channel_to_json(const DecayChannel& ch) {
  json j;
  j["from"] = ch.from;
  j["gamma"] = units::format_rate(ch.gamma);
  json branches = json::object();
  for (const auto& [label, b] : ch.branches) branches[label] = b;
  j["branches"] = branches;
  return j;
}

}  // namespace

ProtocolConfig load_protocol_config(const json& j) {
  ProtocolConfig c;
  if (const json* scheme = find(j, "scheme")) {
    try {
      c.scheme = scheme_from_string(scheme->get<std::string>());
    } catch (const std::exception& err) {
      throw ConfigError("scheme", err.what());
    }
  } else {
    throw ConfigError("scheme", "missing (single_photon | two_photon | three_photon)");
  }
  if (const json* protocol = find(j, "protocol")) {
    try {
      c.protocol = protocol_from_string(protocol->get<std::string>());
    } catch (const std::exception& err) {
      throw ConfigError("protocol", err.what());
    }
  }

  if (const json* pulse = find(j, "pulse")) {
    if (const json* v = find(*pulse, "omega_max")) c.omega_max = angular_at(*v, "pulse.omega_max");
    if (const json* v = find(*pulse, "delta0")) c.delta0 = angular_at(*v, "pulse.delta0");
    if (const json* v = find(*pulse, "duration")) c.duration = time_at(*v, "pulse.duration");
    if (const json* v = find(*pulse, "second_pulse_sign")) {
      if (!v->is_number()) throw ConfigError("pulse.second_pulse_sign", "expected +1 or -1");
      const double s = v->get<double>();
      if (s != 1.0 && s != -1.0) {
        throw ConfigError("pulse.second_pulse_sign", "expected +1 or -1");
      }
      c.second_pulse_sign = s;
    }
  } else if (c.protocol == Protocol::cd_arp) {
    throw ConfigError("pulse", "missing pulse parameters for the cd_arp protocol");
  }

  if (const json* tp = find(j, "two_photon")) {
    if (const json* v = find(*tp, "detuning")) {
      c.two_photon_detuning = angular_at(*v, "two_photon.detuning");
    }
  }
  if (const json* th = find(j, "three_photon")) {
    if (const json* v = find(*th, "omega2")) c.omega2 = angular_at(*v, "three_photon.omega2");
    if (const json* v = find(*th, "omega3")) c.omega3 = angular_at(*v, "three_photon.omega3");
  }
  if (const json* pj = find(j, "phase_jump")) {
    if (const json* v = find(*pj, "omega1")) {
      if (v->is_string() && v->get<std::string>() == "auto") {
        c.phase_jump.omega1_auto = true;
      } else {
        c.phase_jump.omega1_auto = false;
        c.phase_jump.omega1 = angular_at(*v, "phase_jump.omega1");
      }
    }
    if (const json* v = find(*pj, "effective_rabi")) {
      c.phase_jump.effective_rabi = angular_at(*v, "phase_jump.effective_rabi");
    }
    if (const json* v = find(*pj, "detuning")) {
      c.phase_jump.detuning = angular_at(*v, "phase_jump.detuning");
    }
    if (const json* v = find(*pj, "half_time")) {
      c.phase_jump.half_time = time_at(*v, "phase_jump.half_time");
    }
    if (const json* v = find(*pj, "delta_psi")) {
      c.phase_jump.delta_psi = angle_at(*v, "phase_jump.delta_psi");
    }
  }

  bool decay_enabled = true;
  std::vector<DecayChannel> channels;
  if (const json* species = find(j, "species")) {
    if (species->is_string()) {
      const std::string name = species->get<std::string>();
      if (name == "Cs107p") {
        channels.push_back(rydberg_decay(cs_107p()));
      } else if (name == "Rb113p") {
        channels.push_back(rydberg_decay(rb_113p()));
      } else if (name != "none") {
        throw ConfigError("species", "unknown preset '" + name + "' (Cs107p | Rb113p | none)");
      }
    } else if (species->is_object()) {
      channels.push_back(channel_from_json(*species, "species"));
    } else {
      throw ConfigError("species", "expected a preset name or a channel object");
    }
  }
  if (const json* decay = find(j, "decay")) {
    if (const json* enabled = find(*decay, "enabled")) {
      if (!enabled->is_boolean()) throw ConfigError("decay.enabled", "expected a boolean");
      decay_enabled = enabled->get<bool>();
    }
    if (const json* list = find(*decay, "channels")) {
      if (!list->is_array()) throw ConfigError("decay.channels", "expected an array");
      int i = 0;
      for (const json& cj : *list) {
        channels.push_back(
            channel_from_json(cj, "decay.channels[" + std::to_string(i) + "]"));
        ++i;
      }
    }
  }
  if (decay_enabled) c.decay = std::move(channels);

  if (const json* blockade = find(j, "blockade")) {
    if (blockade->is_string() && blockade->get<std::string>() == "infinite") {
      c.blockade = Blockade::infinite();
    } else {
      c.blockade = Blockade::finite(angular_at(*blockade, "blockade"));
    }
  }

  if (const json* conv = find(j, "conventions")) {
    if (const json* sign = find(*conv, "master_equation_sign")) {
      const std::string s = sign->get<std::string>();
      if (s == "plus_i") {
        c.equation_sign = EquationSign::plus_i;
      } else if (s == "minus_i") {
        c.equation_sign = EquationSign::minus_i;
      } else {
        throw ConfigError("conventions.master_equation_sign", "expected plus_i | minus_i");
      }
    }
    if (const json* sign = find(*conv, "two_photon_sign")) {
      const std::string s = sign->get<std::string>();
      if (s == "as_printed") {
        c.two_photon_flipped = false;
      } else if (s == "flipped") {
        c.two_photon_flipped = true;
      } else {
        throw ConfigError("conventions.two_photon_sign", "expected as_printed | flipped");
      }
    }
  }

  if (const json* bell = find(j, "bell")) {
    if (const json* pc = find(*bell, "phase_correction")) {
      if (pc->is_string()) {
        const std::string s = pc->get<std::string>();
        if (s == "auto") {
          c.phase_correction = PhaseCorrectionMode::automatic;
        } else if (s == "none") {
          c.phase_correction = PhaseCorrectionMode::none;
        } else {
          throw ConfigError("bell.phase_correction", "expected auto | none | {\"phi\": ...}");
        }
      } else if (const json* phi = find(*pc, "phi")) {
        c.phase_correction = PhaseCorrectionMode::explicit_value;
        c.explicit_phase = angle_at(*phi, "bell.phase_correction.phi");
      } else {
        throw ConfigError("bell.phase_correction", "expected auto | none | {\"phi\": ...}");
      }
    }
    if (const json* had = find(*bell, "hadamard_on")) {
      const std::string s = had->get<std::string>();
      if (s == "control") {
        c.hadamard_on = 0;
      } else if (s == "target") {
        c.hadamard_on = 1;
      } else {
        throw ConfigError("bell.hadamard_on", "expected control | target");
      }
    }
  }

  if (const json* integ = find(j, "integrator")) {
    if (const json* v = find(*integ, "rtol")) c.integrator.rtol = v->get<double>();
    if (const json* v = find(*integ, "atol")) c.integrator.atol = v->get<double>();
    if (const json* v = find(*integ, "samples_per_pulse")) {
      c.samples_per_pulse = v->get<int>();
      if (c.samples_per_pulse < 2) {
        throw ConfigError("integrator.samples_per_pulse", "must be >= 2");
      }
    }
    if (c.integrator.rtol <= 0.0 || c.integrator.atol <= 0.0) {
      throw ConfigError("integrator", "tolerances must be > 0");
    }
  }
  if (const json* jobs = find(j, "jobs")) c.jobs = jobs->get<int>();
  return c;
}

json dump_protocol_config(const ProtocolConfig& c) {
  json j;
  j["scheme"] = std::string(to_string(c.scheme));
  j["protocol"] = std::string(to_string(c.protocol));
  j["pulse"] = {{"omega_max", units::format_angular(c.omega_max)},
                {"delta0", units::format_angular(c.delta0)},
                {"duration", units::format_time(c.duration)},
                {"second_pulse_sign", c.second_pulse_sign}};
  if (c.scheme == SchemeKind::two_photon) {
    j["two_photon"] = {{"detuning", units::format_angular(c.two_photon_detuning)}};
  }
  if (c.scheme == SchemeKind::three_photon) {
    j["three_photon"] = {{"omega2", units::format_angular(c.omega2)},
                         {"omega3", units::format_angular(c.omega3)}};
  }
  if (c.protocol == Protocol::phase_jump) {
    json pj;
    if (c.phase_jump.omega1_auto) {
      pj["omega1"] = "auto";
      pj["effective_rabi"] = units::format_angular(c.phase_jump.effective_rabi);
    } else {
      pj["omega1"] = units::format_angular(c.phase_jump.omega1);
    }
    pj["detuning"] = units::format_angular(c.phase_jump.detuning);
    pj["half_time"] = units::format_time(c.phase_jump.half_time);
    pj["delta_psi"] = units::format_angle(c.phase_jump.delta_psi);
    j["phase_jump"] = pj;
  }
  json channels = json::array();
  for (const DecayChannel& ch : c.decay) channels.push_back(channel_to_json(ch));
  j["species"] = "none";
  j["decay"] = {{"enabled", !c.decay.empty()}, {"channels", channels}};
  j["blockade"] = c.blockade.is_infinite
                      ? json("infinite")
                      : json(units::format_angular(c.blockade.strength));
  j["conventions"] = {
      {"master_equation_sign",
       c.equation_sign == EquationSign::plus_i ? "plus_i" : "minus_i"},
      {"two_photon_sign", c.two_photon_flipped ? "flipped" : "as_printed"}};
  json pc;
  switch (c.phase_correction) {
    case PhaseCorrectionMode::automatic: pc = "auto"; break;
    case PhaseCorrectionMode::none: pc = "none"; break;
    case PhaseCorrectionMode::explicit_value:
      pc = json{{"phi", units::format_angle(c.explicit_phase)}};
      break;
  }
  j["bell"] = {{"phase_correction", pc},
               {"hadamard_on", c.hadamard_on == 0 ? "control" : "target"}};
  j["integrator"] = {{"rtol", c.integrator.rtol},
                     {"atol", c.integrator.atol},
                     {"samples_per_pulse", c.samples_per_pulse}};
  j["jobs"] = c.jobs;
  return j;
}

namespace {

std::vector<double> axis_values(const json& j, ParameterUnit unit,
                                const std::string& where) {
  std::vector<double> out;
  if (const json* values = find(j, "values")) {
    if (!values->is_array() || values->empty()) {
      throw ConfigError(where + ".values", "expected a non-empty array");
    }
    for (const json& v : *values) out.push_back(parse_by_unit(v, unit, where + ".values"));
    return out;
  }
  if (const json* lin = find(j, "linspace")) {
    const json* from = find(*lin, "from");
    const json* to = find(*lin, "to");
    const json* count = find(*lin, "count");
    if (!from || !to || !count) {
      throw ConfigError(where + ".linspace", "needs from, to, count");
    }
    const double a = parse_by_unit(*from, unit, where + ".linspace.from");
    const double b = parse_by_unit(*to, unit, where + ".linspace.to");
    const int n = count->get<int>();
    if (n < 2) throw ConfigError(where + ".linspace.count", "must be >= 2");
    for (int i = 0; i < n; ++i) {
      out.push_back(a + (b - a) * i / (n - 1));
    }
    return out;
  }
  throw ConfigError(where, "needs either 'values' or 'linspace'");
}

std::string format_by_unit(double v, ParameterUnit unit) {
  switch (unit) {
    case ParameterUnit::angular: return units::format_angular(v);
    case ParameterUnit::time: return units::format_time(v);
    case ParameterUnit::angle: return units::format_angle(v);
  }
  return {};
}

}  // namespace

SweepSpec load_sweep_spec(const json& j) {
  SweepSpec spec;
  const json* config = find(j, "config");
  if (!config) throw ConfigError("config", "sweep needs a base protocol config");
  spec.base = load_protocol_config(*config);
  if (const json* obs = find(j, "observable")) {
    try {
      spec.observable = observable_from_string(obs->get<std::string>());
    } catch (const std::exception& err) {
      throw ConfigError("observable", err.what());
    }
  }
  const json* axes = find(j, "axes");
  if (!axes || !axes->is_array() || axes->empty()) {
    throw ConfigError("axes", "expected a non-empty array of axes");
  }
  int i = 0;
  for (const json& aj : *axes) {
    const std::string where = "axes[" + std::to_string(i) + "]";
    const json* parameter = find(aj, "parameter");
    if (!parameter || !parameter->is_string()) {
      throw ConfigError(where, "missing 'parameter' path");
    }
    SweepAxis axis;
    axis.parameter = parameter->get<std::string>();
    ParameterUnit unit;
    try {
      unit = parameter_unit(axis.parameter);
    } catch (const std::exception& err) {
      throw ConfigError(where + ".parameter", err.what());
    }
    axis.values = axis_values(aj, unit, where);
    spec.axes.push_back(std::move(axis));
    ++i;
  }
  if (const json* jobs = find(j, "jobs")) spec.jobs = jobs->get<int>();
  return spec;
}

json dump_sweep_spec(const SweepSpec& spec) {
  json j;
  j["observable"] = std::string(to_string(spec.observable));
  json axes = json::array();
  for (const SweepAxis& axis : spec.axes) {
    const ParameterUnit unit = parameter_unit(axis.parameter);
    json values = json::array();
    for (double v : axis.values) values.push_back(format_by_unit(v, unit));
    axes.push_back({{"parameter", axis.parameter}, {"values", values}});
  }
  j["axes"] = axes;
  j["jobs"] = spec.jobs;
  j["config"] = dump_protocol_config(spec.base);
  return j;
}

OptimizerSpec load_optimizer_spec(const json& j) {
  OptimizerSpec spec;
  const json* config = find(j, "config");
  if (!config) throw ConfigError("config", "optimizer needs a base protocol config");
  spec.base = load_protocol_config(*config);
  if (const json* obj = find(j, "objective")) {
    try {
      spec.objective = observable_from_string(obj->get<std::string>());
    } catch (const std::exception& err) {
      throw ConfigError("objective", err.what());
    }
  }
  if (const json* v = find(j, "max_evaluations")) spec.max_evaluations = v->get<int>();
  if (const json* v = find(j, "tolerance")) spec.tolerance = v->get<double>();
  const json* params = find(j, "parameters");
  if (!params || !params->is_array() || params->empty()) {
    throw ConfigError("parameters", "expected a non-empty array");
  }
  int i = 0;
  for (const json& pj : *params) {
    const std::string where = "parameters[" + std::to_string(i) + "]";
    OptimizerParameter p;
    const json* path = find(pj, "path");
    if (!path || !path->is_string()) throw ConfigError(where, "missing 'path'");
    p.path = path->get<std::string>();
    ParameterUnit unit;
    try {
      unit = parameter_unit(p.path);
    } catch (const std::exception& err) {
      throw ConfigError(where + ".path", err.what());
    }
    const json* initial = find(pj, "initial");
    const json* lower = find(pj, "lower");
    const json* upper = find(pj, "upper");
    if (!initial || !lower || !upper) {
      throw ConfigError(where, "needs initial, lower, upper");
    }
    p.initial = parse_by_unit(*initial, unit, where + ".initial");
    p.lower = parse_by_unit(*lower, unit, where + ".lower");
    p.upper = parse_by_unit(*upper, unit, where + ".upper");
    if (const json* step = find(pj, "step")) {
      p.step = parse_by_unit(*step, unit, where + ".step");
    }
    spec.parameters.push_back(std::move(p));
    ++i;
  }
  return spec;
}

json dump_optimizer_spec(const OptimizerSpec& spec) {
  json j;
  j["objective"] = std::string(to_string(spec.objective));
  j["max_evaluations"] = spec.max_evaluations;
  j["tolerance"] = spec.tolerance;
  json params = json::array();
  for (const OptimizerParameter& p : spec.parameters) {
    const ParameterUnit unit = parameter_unit(p.path);
    params.push_back({{"path", p.path},
                      {"initial", format_by_unit(p.initial, unit)},
                      {"lower", format_by_unit(p.lower, unit)},
                      {"upper", format_by_unit(p.upper, unit)},
                      {"step", format_by_unit(p.step, unit)}});
  }
  j["parameters"] = params;
  j["config"] = dump_protocol_config(spec.base);
  return j;
}

}  // namespace rydcz
