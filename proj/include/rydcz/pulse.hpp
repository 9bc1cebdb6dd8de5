// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

// Analytic pulse family for the double adiabatic sequence and its
// counterdiabatic correction, plus the per-scheme drive constructions.
// Everything here is a pure function of (t, params); angular units rad/us.

namespace rydcz {

using Complex = std::complex<double>;

// One quartic-Gaussian amplitude pulse with sinusoidal chirp,
//   omega0(t) = sign * omega_max * [exp(-(t-t0)^4/w^4) - a] / (1 - a)
//   delta(t)  = delta0 * sin(pi (t-t0) / T)
// on the closed support |t - t0| <= T/2 and identically zero outside.
// The offset a = exp(-(T/2)^4/w^4) anchors the amplitude to exactly zero
// at the support edges.
struct PulseParams {
  double omega_max = 0.0;       // rad/us, peak Rabi frequency (>= 0)
  double delta0 = 0.0;          // rad/us, chirp amplitude
  double duration = 0.0;        // T, us
  double center = 0.0;          // t0, us
  double width = 0.0;           // w, us (default T/4)
  double offset = 0.0;          // a, dimensionless edge anchor
  double amplitude_sign = 1.0;  // +1 or -1

  // width <= 0 selects the default w = T/4.  Validates T > 0, w > 0,
  // omega_max >= 0 and computes the edge offset.
  static PulseParams make(double omega_max, double delta0, double duration,
                          double center, double amplitude_sign = 1.0,
                          double width = 0.0);

  bool contains(double t) const;
};

double omega0(double t, const PulseParams& p);
double omega0_dot(double t, const PulseParams& p);
double delta_t(double t, const PulseParams& p);
double delta_dot(double t, const PulseParams& p);

// Counterdiabatic drive, (omega0' delta - omega0 delta') / (omega0^2 + delta^2).
// At a point where both omega0 and delta vanish the term is defined as zero;
// the `degenerate` flag reports that the denominator underflowed.
struct CdSample {
  double value = 0.0;
  bool degenerate = false;
};
CdSample cd_term_checked(double t, const PulseParams& p);
double cd_term(double t, const PulseParams& p);

// Blockade-adapted variant with denominator 2*omega0^2 + delta^2.  Provided
// for analysis and tests; the gate protocol always drives with cd_term.
CdSample cd_term_blockade_checked(double t, const PulseParams& p);
double cd_term_blockade(double t, const PulseParams& p);

// omega0(t) + i * cd_term(t)
Complex complex_rabi(double t, const PulseParams& p);

// Double adiabatic sequence: two pulses of duration T centered at -T/2 and
// +T/2, occupying [-T, +T].  The second pulse optionally carries an inverted
// amplitude sign; its CD term is recomputed from the signed amplitude.
class PulseSequence {
 public:
  static PulseSequence double_arp(double omega_max, double delta0,
                                  double duration,
                                  double second_pulse_sign = 1.0);

  const PulseParams& first() const { return first_; }
  const PulseParams& second() const { return second_; }
  const PulseParams& active(double t) const { return t < 0.0 ? first_ : second_; }

  double begin() const { return -first_.duration; }
  double end() const { return second_.duration; }

  double omega0(double t) const;
  double delta(double t) const;
  double cd(double t) const;
  Complex rabi(double t) const;  // omega0 + i cd of the active pulse

 private:
  PulseParams first_;
  PulseParams second_;
};

// Two-photon construction: identically shaped step pulses with
// Omega1 = Omega2 = sqrt(-2 Delta (omega0 + i cd)), Delta < 0, so the
// reconstructed two-photon Rabi frequency Omega1*Omega2/(2 Delta) has the
// counterdiabatic profile.  `flipped_sign` selects the +2 Delta convention
// under the radical (gauge-equivalent; see two_photon_reconstruct).
struct TwoPhotonPulseParams {
  PulseSequence base;
  double intermediate_detuning = 0.0;  // Delta, rad/us, must be < 0
  bool flipped_sign = false;

  static TwoPhotonPulseParams make(PulseSequence base, double detuning,
                                   bool flipped_sign = false);
};

Complex two_photon_step_rabi(double t, const TwoPhotonPulseParams& p);
// Omega1^2 / (2 Delta): equals -(omega0 + i cd) as printed, +(...) if flipped.
Complex two_photon_reconstruct(double t, const TwoPhotonPulseParams& p);

// Keeps a sequence of complex square roots continuous in t.  The principal
// branch is already continuous for the double-ARP family (Re >= 0 on support);
// this tracker handles profiles that cross the branch cut, flipping the sign
// whenever that shortens the jump from the previous sample.
class BranchContinuousSqrt {
 public:
  Complex operator()(Complex square);

 private:
  Complex last_{1.0, 0.0};
};

// Three-photon construction: constant Omega2, Omega3 and
// Omega1(t) = (Omega2/Omega3) (omega0 + i cd), so Omega1 Omega3 / Omega2
// recovers the target effective drive.
struct ThreePhotonPulseParams {
  PulseSequence base;
  double omega2 = 0.0;  // rad/us, constant
  double omega3 = 0.0;  // rad/us, constant

  static ThreePhotonPulseParams make(PulseSequence base, double omega2,
                                     double omega3);
};

Complex three_photon_first_step(double t, const ThreePhotonPulseParams& p);

// Phase-jump drive: one continuous constant-amplitude first-step pulse on
// [0, 2T] with an instantaneous phase shift delta_psi at t = T, plus a static
// detuning on |r>.  Adapted to the three-photon ladder with constant
// Omega2, Omega3.
struct PhaseJumpParams {
  double omega1_amp = 0.0;  // rad/us
  double detuning = 0.0;    // static three-photon detuning, rad/us
  double half_time = 0.0;   // T, us; the full pulse lasts 2T
  double delta_psi = 0.0;   // rad
  double omega2 = 0.0;      // rad/us
  double omega3 = 0.0;      // rad/us

  static PhaseJumpParams make(double omega1_amp, double detuning,
                              double half_time, double delta_psi,
                              double omega2, double omega3);
};

Complex phase_jump_profile(double t, const PhaseJumpParams& p);

}  // namespace rydcz
