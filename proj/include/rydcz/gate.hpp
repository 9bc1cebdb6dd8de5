// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string>

#include "rydcz/dynamics.hpp"
#include "rydcz/model.hpp"

// Full CZ protocols over the computational basis, ideal single-qubit gates,
// phase corrections, Bell-state preparation and scoring.

namespace rydcz {

enum class Protocol { cd_arp, phase_jump };
enum class PhaseCorrectionMode { automatic, explicit_value, none };

std::string_view to_string(Protocol p);
Protocol protocol_from_string(std::string_view name);

struct ProtocolConfig {
  SchemeKind scheme = SchemeKind::single_photon;
  Protocol protocol = Protocol::cd_arp;

  // cd_arp pulse family (double adiabatic sequence)
  double omega_max = 0.0;   // rad/us
  double delta0 = 0.0;      // rad/us
  double duration = 0.0;    // single-pulse T, us
  double second_pulse_sign = 1.0;

  // two-photon extension
  double two_photon_detuning = 0.0;  // Delta, rad/us (< 0)
  bool two_photon_flipped = false;

  // three-photon extension
  double omega2 = 0.0;  // rad/us
  double omega3 = 0.0;  // rad/us

  // phase-jump protocol (three-photon ladder)
  struct PhaseJump {
    bool omega1_auto = true;       // derive omega1 from effective_rabi
    double omega1 = 0.0;           // rad/us, used when !omega1_auto
    double effective_rabi = 0.0;   // rad/us target of omega1*omega3/omega2
    double detuning = 0.0;         // rad/us static detuning on |r>
    double half_time = 0.0;        // us
    double delta_psi = 0.0;        // rad
  } phase_jump;

  // decay channels; empty list = closed system (pure-state propagation)
  std::vector<DecayChannel> decay;

  Blockade blockade = Blockade::infinite();
  EquationSign equation_sign = EquationSign::plus_i;

  PhaseCorrectionMode phase_correction = PhaseCorrectionMode::automatic;
  double explicit_phase = 0.0;  // rad, used with explicit_value
  int hadamard_on = 1;          // final Hadamard: 0 = control, 1 = target

  IntegratorOptions integrator;
  int samples_per_pulse = 2000;
  int jobs = 0;  // 0 = run the four basis inputs concurrently (hardware limit)

  bool has_decay() const;
  DriveProfile drive() const;
  LevelScheme level_scheme() const;
  TwoAtomSystem system() const;
  double phase_jump_omega1() const;
};

// Result of propagating one computational-basis input through the protocol.
struct InputOutcome {
  std::string input;              // "00", "01", "10", "11"
  double return_population = 0.0; // population back on the input state
  double phase = 0.0;             // accumulated phase (pure runs only)
  bool phase_defined = false;
  bool phase_continuous = true;
  double leakage = 0.0;           // 1 - Tr_{0,1,r}
  QuantumState final_state;
};

struct GateRun {
  std::array<InputOutcome, 4> outcomes;  // order: 00, 01, 10, 11
  double phi00 = 0.0, phi01 = 0.0, phi10 = 0.0, phi11 = 0.0;
  bool phases_defined = false;
  double simulated_span = 0.0;  // us
  double wall_seconds = 0.0;

  const InputOutcome& outcome(std::string_view input) const;
};

// Propagates |00>, |01>, |10>, |11> through the pulse sequence under the
// two-atom model; pure-state propagation when no decay channels are
// configured, Lindblad otherwise.
GateRun run_cz(const ProtocolConfig& config);

// wrap(phi11 + phi00 - phi01 - phi10) into (-pi, pi]
double cz_conditional_phase(const GateRun& run);

// Ideal single-qubit operations embedded on the {|0>,|1>} subspace of one
// atom, identity elsewhere; conjugation on density matrices.
QuantumState apply_single_qubit(const QuantumState& state,
                                const TwoAtomSystem& system, int atom,
                                const Eigen::Matrix2cd& u);
QuantumState ideal_hadamard(const QuantumState& state,
                            const TwoAtomSystem& system, int atom);
QuantumState ideal_phase(const QuantumState& state, const TwoAtomSystem& system,
                         int atom, double phi);

// F = (<00|rho|00> + <11|rho|11>)/2 + |<00|rho|11>|
double bell_fidelity(const QuantumState& state, const TwoAtomSystem& system);

struct BellScore {
  double fidelity = 0.0;              // with phase correction applied
  double fidelity_uncorrected = 0.0;  // same run scored without correction
  double correction_phase = 0.0;      // rad applied per atom (auto: -phi01)
  double p00 = 0.0, p11 = 0.0;
  double coherence_00_11 = 0.0;       // |<00|rho|11>|
  double leakage = 0.0;
  double wall_seconds = 0.0;
  QuantumState final_state;           // corrected, after the final Hadamard
};

// |00> -> ideal H(x)H -> simulated CZ sequence -> single-qubit phase
// corrections (auto mode calibrates phi01 from a zero-decay pure run) ->
// ideal Hadamard on one atom -> Bell witness.
BellScore prepare_bell(const ProtocolConfig& config);

// Leakage observable 1 - Tr_{0,1,r}[rho] (population on any state involving
// d or an intermediate level).
double leakage(const QuantumState& state, const TwoAtomSystem& system);

}  // namespace rydcz
