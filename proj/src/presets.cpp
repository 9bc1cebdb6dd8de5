// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include <nlohmann/json.hpp>

#include "rydcz/config.hpp"

// Versioned figure-reproduction presets: each paper figure is one CLI
// invocation.  Intermediate-state lifetimes are external inputs computed from
// standard alkali lifetime tables, not fitted values; see README.

namespace rydcz {

using nlohmann::json;

namespace {

json fig2_pulse() {
  return {{"omega_max", "20 MHz_over_2pi"},
          {"delta0", "10 MHz_over_2pi"},
          {"duration", "0.05 us"},
          {"second_pulse_sign", 1}};
}

json cs_p_channel() {
  // Cs 7p1/2 intermediate state, tau ~ 155 ns; ground-manifold branching
  // mirrors the Cs Rydberg pattern.
  return {{"from", "p"},
          {"tau", "0.155 us"},
          {"branches", {{"0", 0.0625}, {"1", 0.0625}, {"d", 0.875}}}};
}

json rb_p_channel() {
  // Rb 5p3/2, tau ~ 26.24 ns
  return {{"from", "p"},
          {"tau", "0.02624 us"},
          {"branches", {{"0", 0.125}, {"1", 0.125}, {"d", 0.75}}}};
}

json rb_s_channel() {
  // Rb 6s1/2, tau ~ 45.6 ns; ~2/3 branches back through 5p3/2, the 5p1/2
  // route is booked as uncorrectable leakage.
  return {{"from", "s"},
          {"tau", "0.0456 us"},
          {"branches", {{"p", 2.0 / 3.0}, {"d", 1.0 / 3.0}}}};
}

json single_photon_base() {
  return {{"scheme", "single_photon"},
          {"protocol", "cd_arp"},
          {"pulse", fig2_pulse()},
          {"species", "none"},
          {"blockade", "infinite"}};
}

json cs_gate_config(const char* blockade) {
  json j = single_photon_base();
  j["species"] = "Cs107p";
  j["blockade"] = blockade;
  return j;
}

json two_photon_config() {
  return {{"scheme", "two_photon"},
          {"protocol", "cd_arp"},
          {"pulse", fig2_pulse()},
          {"two_photon", {{"detuning", "-4 GHz_over_2pi"}}},
          {"species", "Cs107p"},
          {"decay", {{"channels", json::array({cs_p_channel()})}}},
          {"blockade", "1 GHz_over_2pi"},
          {"integrator", {{"rtol", 1e-9}, {"atol", 1e-11}}}};
}

json three_photon_config() {
  return {{"scheme", "three_photon"},
          {"protocol", "cd_arp"},
          {"pulse",
           {{"omega_max", "10 MHz_over_2pi"},
            {"delta0", "5 MHz_over_2pi"},
            {"duration", "0.1 us"}}},
          {"three_photon", {{"omega2", "10 GHz_over_2pi"}, {"omega3", "300 MHz_over_2pi"}}},
          {"species", "Rb113p"},
          {"decay", {{"channels", json::array({rb_s_channel(), rb_p_channel()})}}},
          {"blockade", "1 GHz_over_2pi"},
          {"integrator", {{"rtol", 1e-9}, {"atol", 1e-11}}}};
}

json phase_jump_config() {
  // Levine-style calibration: Omega*T = 4.29268, delta/Omega = 0.377371,
  // jump 3.90242 at an effective Rabi frequency of 10 rad/us.  The detuning
  // sign follows the -Delta|r><r| convention of that protocol.
  return {{"scheme", "three_photon"},
          {"protocol", "phase_jump"},
          {"pulse", {{"omega_max", "0 MHz_over_2pi"}, {"delta0", "0 MHz_over_2pi"}, {"duration", "0.1 us"}}},
          {"three_photon", {{"omega2", "10 GHz_over_2pi"}, {"omega3", "100 MHz_over_2pi"}}},
          {"phase_jump",
           {{"omega1", "auto"},
            {"effective_rabi", "10 rad_per_us"},
            {"detuning", "-3.77371 rad_per_us"},
            {"half_time", "0.429268 us"},
            {"delta_psi", "3.90242 rad"}}},
          {"species", "Rb113p"},
          {"decay", {{"channels", json::array({rb_s_channel(), rb_p_channel()})}}},
          {"blockade", "1 GHz_over_2pi"},
          {"integrator", {{"rtol", 1e-9}, {"atol", 1e-11}}}};
}

json axis(const char* parameter, std::initializer_list<const char*> values) {
  json vals = json::array();
  for (const char* v : values) vals.push_back(v);
  return {{"parameter", parameter}, {"values", vals}};
}

json build_fig2(bool) { return single_photon_base(); }

json build_fig2_gate(bool) { return single_photon_base(); }

json build_fig2_bell(bool) { return single_photon_base(); }

json build_fig3a(bool dense) {
  const int n = dense ? 41 : 21;
  return {{"observable", "bell_fidelity"},
          {"axes",
           json::array(
               {{{"parameter", "pulse.omega_max"},
                 {"linspace",
                  {{"from", "15 MHz_over_2pi"}, {"to", "25 MHz_over_2pi"}, {"count", n}}}},
                {{"parameter", "pulse.delta0"},
                 {"linspace",
                  {{"from", "5 MHz_over_2pi"}, {"to", "15 MHz_over_2pi"}, {"count", n}}}}})},
          {"config", single_photon_base()}};
}

json build_fig3b(bool dense) {
  json values = dense
                    ? axis("blockade", {"0.5 GHz_over_2pi", "0.75 GHz_over_2pi",
                                        "1 GHz_over_2pi", "1.25 GHz_over_2pi",
                                        "1.5 GHz_over_2pi", "2 GHz_over_2pi",
                                        "2.5 GHz_over_2pi", "3 GHz_over_2pi",
                                        "4 GHz_over_2pi", "6 GHz_over_2pi",
                                        "8 GHz_over_2pi"})
                    : axis("blockade", {"0.5 GHz_over_2pi", "1 GHz_over_2pi",
                                        "2 GHz_over_2pi", "2.5 GHz_over_2pi",
                                        "3 GHz_over_2pi", "4 GHz_over_2pi"});
  return {{"observable", "bell_infidelity"},
          {"axes", json::array({values})},
          {"config", single_photon_base()}};
}

json build_fig4d(bool dense) {
  json values = dense ? axis("blockade", {"1 GHz_over_2pi", "1.5 GHz_over_2pi",
                                          "2 GHz_over_2pi", "3 GHz_over_2pi",
                                          "4 GHz_over_2pi", "6 GHz_over_2pi",
                                          "8 GHz_over_2pi"})
                      : axis("blockade", {"1 GHz_over_2pi", "2 GHz_over_2pi",
                                          "4 GHz_over_2pi", "8 GHz_over_2pi"});
  return {{"observable", "bell_infidelity"},
          {"axes", json::array({values})},
          {"config", cs_gate_config("4 GHz_over_2pi")}};
}

json two_photon_detuning_axis(bool dense) {
  return dense ? axis("two_photon.detuning",
                      {"-0.5 GHz_over_2pi", "-1 GHz_over_2pi", "-1.5 GHz_over_2pi",
                       "-2 GHz_over_2pi", "-3 GHz_over_2pi", "-4 GHz_over_2pi"})
               : axis("two_photon.detuning",
                      {"-1 GHz_over_2pi", "-2 GHz_over_2pi", "-4 GHz_over_2pi"});
}

json build_fig6a(bool dense) {
  json config = two_photon_config();
  config["blockade"] = "infinite";
  config["decay"] = {{"enabled", false}};
  config["species"] = "none";
  return {{"observable", "phi01"},
          {"axes", json::array({two_photon_detuning_axis(dense)})},
          {"config", config}};
}

json build_fig6b(bool dense) {
  json spec = build_fig6a(dense);
  spec["observable"] = "cz_phase_defect";
  return spec;
}

json build_fig6c(bool dense) {
  return {{"observable", "bell_infidelity"},
          {"axes", json::array({two_photon_detuning_axis(dense)})},
          {"config", two_photon_config()}};
}

json omega2_axis() {
  return axis("three_photon.omega2",
              {"2 GHz_over_2pi", "5 GHz_over_2pi", "10 GHz_over_2pi"});
}

json build_fig7b_cdarp(bool) {
  return {{"observable", "bell_infidelity"},
          {"axes", json::array({omega2_axis()})},
          {"config", three_photon_config()}};
}

json build_fig7b_phasejump(bool) {
  return {{"observable", "bell_infidelity"},
          {"axes", json::array({omega2_axis()})},
          {"config", phase_jump_config()}};
}

json build_cs_bell(bool) { return cs_gate_config("4 GHz_over_2pi"); }

json build_rb_bell(bool) {
  json j = cs_gate_config("4 GHz_over_2pi");
  j["species"] = "Rb113p";
  return j;
}

json build_two_photon_bell(bool) { return two_photon_config(); }

json build_three_photon_bell(bool) { return three_photon_config(); }

json build_phase_jump_bell(bool) { return phase_jump_config(); }

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = {
      {"fig2", "pulse", "Rabi/CD/detuning profiles of the double ARP sequence",
       build_fig2},
      {"fig2_gate", "gate", "ideal single-photon CZ run, infinite blockade",
       build_fig2_gate},
      {"fig2_bell", "bell", "ideal single-photon Bell preparation",
       build_fig2_bell},
      {"fig3a", "sweep", "Bell fidelity over (omega_max, delta0), ideal",
       build_fig3a},
      {"fig3b", "sweep", "Bell infidelity vs blockade strength, ideal",
       build_fig3b},
      {"fig4d", "sweep", "Bell infidelity vs blockade strength, Cs with decay",
       build_fig4d},
      {"fig6a", "sweep", "two-photon phi01 vs detuning, infinite blockade",
       build_fig6a},
      {"fig6b", "sweep", "two-photon CZ phase defect vs detuning",
       build_fig6b},
      {"fig6c", "sweep", "two-photon Bell infidelity vs detuning, with decay",
       build_fig6c},
      {"fig7b_cdarp", "sweep", "three-photon CD-ARP infidelity vs omega2",
       build_fig7b_cdarp},
      {"fig7b_phasejump", "sweep", "three-photon phase-jump infidelity vs omega2",
       build_fig7b_phasejump},
      {"cs_bell", "bell", "Cs single-photon Bell with decay, B/2pi = 4 GHz",
       build_cs_bell},
      {"rb_bell", "bell", "Rb single-photon Bell with decay, B/2pi = 4 GHz",
       build_rb_bell},
      {"two_photon_bell", "bell", "two-photon Bell, Delta/2pi = -4 GHz, with decay",
       build_two_photon_bell},
      {"three_photon_bell", "bell", "three-photon CD-ARP Bell, omega2/2pi = 10 GHz",
       build_three_photon_bell},
      {"phase_jump_bell", "bell", "three-photon phase-jump Bell, omega2/2pi = 10 GHz",
       build_phase_jump_bell},
  };
  return list;
}

const Preset& preset(const std::string& name) {
  for (const Preset& p : presets()) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("unknown preset '" + name + "' (try: presets list)");
}

}  // namespace rydcz
