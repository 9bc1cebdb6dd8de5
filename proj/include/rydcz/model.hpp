// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rydcz/pulse.hpp"

// Per-atom level schemes for the three excitation ladders, the time-dependent
// single-atom and two-atom Hamiltonians with the blockade term, and the
// Lindblad decay operators built from lifetimes and branching ratios.
//
// Fixed basis ordering per atom (documented so matrix indices are
// reproducible in tests and serialized output):
//   single photon:  [0, 1, d, r]
//   two photon:     [0, 1, d, p, r]
//   three photon:   [0, 1, d, p, s, r]
// The two-atom product basis is row-major control (x) target.

namespace rydcz {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

enum class SchemeKind { single_photon, two_photon, three_photon };

std::string_view to_string(SchemeKind kind);
SchemeKind scheme_from_string(std::string_view name);

// One decaying level: total rate gamma = 1/tau with branching ratios over
// strictly lower levels summing to one.
struct DecayChannel {
  std::string from;
  double gamma = 0.0;  // 1/us
  std::vector<std::pair<std::string, double>> branches;
};

class LevelScheme {
 public:
  static LevelScheme make(SchemeKind kind, std::vector<DecayChannel> decay = {});

  SchemeKind kind() const { return kind_; }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  int index(std::string_view label) const;  // throws on unknown label
  const std::vector<DecayChannel>& decay() const { return decay_; }
  int rydberg_index() const { return size() - 1; }

 private:
  void validate() const;

  SchemeKind kind_ = SchemeKind::single_photon;
  std::vector<std::string> labels_;
  std::vector<DecayChannel> decay_;
};

// Preset Rydberg-state decay parameters.  Values are fixed catalog entries;
// custom species are built from config.
struct AtomSpecies {
  std::string name;
  double gamma_r = 0.0;  // 1/us
  double b_0r = 0.0;
  double b_1r = 0.0;
  double b_dr = 0.0;
};

const AtomSpecies& cs_107p();  // gamma_r = 1/540, b_dr = 7/8, b_0r = b_1r = 1/16
const AtomSpecies& rb_113p();  // gamma_r = 1/540, b_dr = 3/4, b_0r = b_1r = 1/8
DecayChannel rydberg_decay(const AtomSpecies& species);

struct Blockade {
  bool is_infinite = true;
  double strength = 0.0;  // rad/us, meaningful only when finite

  static Blockade infinite() { return {true, 0.0}; }
  static Blockade finite(double rad_per_us) { return {false, rad_per_us}; }
};

// Two-atom composite basis.  INFINITE blockade removes the doubly-Rydberg
// product state from the basis instead of carrying a large diagonal shift.
class TwoAtomSystem {
 public:
  TwoAtomSystem(LevelScheme scheme, Blockade blockade);

  const LevelScheme& scheme() const { return scheme_; }
  const Blockade& blockade() const { return blockade_; }
  int atom_dim() const { return scheme_.size(); }
  int dim() const { return static_cast<int>(kept_.size()); }

  // Truncated index of the product state |a b>, or -1 if removed.
  int state_index(int a, int b) const;
  int state_index(std::string_view a, std::string_view b) const;
  const std::vector<int>& kept() const { return kept_; }
  std::string state_label(int truncated_index) const;  // e.g. "1r"

 private:
  LevelScheme scheme_;
  Blockade blockade_;
  std::vector<int> kept_;  // truncated -> product index
  std::vector<int> map_;   // product -> truncated index or -1
};

// Laser couplings of one scheme at one instant, as they enter the single-atom
// Hamiltonian.
struct DriveSample {
  Complex step1{0.0, 0.0};  // Omega (single photon) or Omega1
  Complex step2{0.0, 0.0};  // Omega2 (two photon: shaped, three photon: const)
  double step3 = 0.0;       // Omega3 (three photon)
  double delta_r = 0.0;     // detuning on |r>
  double delta_p = 0.0;     // intermediate detuning on |p> (two photon)
};

// Scheme-bound drive: a pure function of t over [begin, end].
class DriveProfile {
 public:
  static DriveProfile single_photon(PulseSequence seq);
  static DriveProfile two_photon(TwoPhotonPulseParams params);
  static DriveProfile three_photon(ThreePhotonPulseParams params);
  static DriveProfile phase_jump(PhaseJumpParams params);  // three-photon ladder

  SchemeKind scheme() const { return scheme_; }
  double begin() const { return begin_; }
  double end() const { return end_; }
  DriveSample at(double t) const;
  // Interior times where the drive is discontinuous (pulse seam, phase jump);
  // propagation restarts there.
  std::vector<double> seams() const;

 private:
  std::variant<PulseSequence, TwoPhotonPulseParams, ThreePhotonPulseParams,
               PhaseJumpParams>
      impl_;
  SchemeKind scheme_ = SchemeKind::single_photon;
  double begin_ = 0.0;
  double end_ = 0.0;
};

// H(t), hbar = 1.  Couplings enter as (Omega/2)|upper><lower| + H.c. with the
// conjugated amplitude on the lower triangle; |0> and |d> stay uncoupled.
ComplexMatrix single_atom_hamiltonian(const LevelScheme& scheme,
                                      const DriveProfile& drive, double t);

// H = Hc (x) I + I (x) Ht + B |rr><rr| on the (possibly truncated) basis,
// with identical driving of both atoms.
ComplexMatrix two_atom_hamiltonian(const TwoAtomSystem& system,
                                   const DriveProfile& drive, double t);
void assemble_two_atom_hamiltonian(const TwoAtomSystem& system,
                                   const DriveProfile& drive, double t,
                                   ComplexMatrix& out);

// sqrt(b gamma)|j><k| per atom and channel, embedded in the two-atom space
// and projected onto the truncated basis.
std::vector<ComplexMatrix> lindblad_operators(const TwoAtomSystem& system);

// Structured form of the same operators for fast dissipator application:
// atom in {0 = control, 1 = target}, from/to are atom-basis indices.
struct LindbladChannel {
  int atom;
  int from;
  int to;
  double rate;  // b * gamma
};
std::vector<LindbladChannel> lindblad_channels(const TwoAtomSystem& system);

// Blockade-limit oracle: H over {|11>, (|1r>+|r1>)/sqrt(2)} with off-diagonal
// sqrt(2) Omega(t)/2 and diagonal (0, delta(t)).
Eigen::Matrix2cd effective_blockaded_two_level(const PulseSequence& pulses,
                                               double t);

}  // namespace rydcz
