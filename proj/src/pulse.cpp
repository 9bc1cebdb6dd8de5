// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include "rydcz/pulse.hpp"

#include <cmath>
#include <stdexcept>

namespace rydcz {

namespace {

// exp(-x^4/w^4) with x^4 built from x*x so that the edge evaluation
// reproduces the stored offset bit for bit.
double envelope(double x, double w) {
  const double x2 = x * x;
  const double w2 = w * w;
  const double q = (x2 * x2) / (w2 * w2);
  return std::exp(-q);
}

}  // namespace

PulseParams PulseParams::make(double omega_max, double delta0, double duration,
                              double center, double amplitude_sign,
                              double width) {
  if (!(duration > 0.0)) throw std::invalid_argument("pulse duration must be > 0");
  if (omega_max < 0.0) throw std::invalid_argument("omega_max must be >= 0");
  if (width <= 0.0) width = duration / 4.0;
  PulseParams p;
  p.omega_max = omega_max;
  p.delta0 = delta0;
  p.duration = duration;
  p.center = center;
  p.width = width;
  p.offset = envelope(duration / 2.0, width);
  p.amplitude_sign = (amplitude_sign < 0.0) ? -1.0 : 1.0;
  return p;
}

bool PulseParams::contains(double t) const {
  return std::abs(t - center) <= 0.5 * duration;
}

double omega0(double t, const PulseParams& p) {
  if (!p.contains(t)) return 0.0;
  const double x = t - p.center;
  return p.amplitude_sign * p.omega_max * (envelope(x, p.width) - p.offset) /
         (1.0 - p.offset);
}

double omega0_dot(double t, const PulseParams& p) {
  if (!p.contains(t)) return 0.0;
  const double x = t - p.center;
  const double w2 = p.width * p.width;
  const double w4 = w2 * w2;
  return p.amplitude_sign * p.omega_max * envelope(x, p.width) *
         (-4.0 * x * x * x / w4) / (1.0 - p.offset);
}

double delta_t(double t, const PulseParams& p) {
  if (!p.contains(t)) return 0.0;
  return p.delta0 * std::sin(M_PI * (t - p.center) / p.duration);
}

double delta_dot(double t, const PulseParams& p) {
  if (!p.contains(t)) return 0.0;
  return p.delta0 * (M_PI / p.duration) *
         std::cos(M_PI * (t - p.center) / p.duration);
}

namespace {

CdSample cd_with_denominator(double t, const PulseParams& p, double omega_weight) {
  const double om = omega0(t, p);
  const double de = delta_t(t, p);
  const double den = omega_weight * om * om + de * de;
  if (den <= 0.0) return {0.0, p.contains(t)};
  const double num = omega0_dot(t, p) * de - om * delta_dot(t, p);
  return {num / den, false};
}

}  // namespace

CdSample cd_term_checked(double t, const PulseParams& p) {
  return cd_with_denominator(t, p, 1.0);
}

double cd_term(double t, const PulseParams& p) {
  return cd_term_checked(t, p).value;
}

CdSample cd_term_blockade_checked(double t, const PulseParams& p) {
  return cd_with_denominator(t, p, 2.0);
}

double cd_term_blockade(double t, const PulseParams& p) {
  return cd_term_blockade_checked(t, p).value;
}

Complex complex_rabi(double t, const PulseParams& p) {
  return {omega0(t, p), cd_term(t, p)};
}

PulseSequence PulseSequence::double_arp(double omega_max, double delta0,
                                        double duration,
                                        double second_pulse_sign) {
  PulseSequence s;
  s.first_ = PulseParams::make(omega_max, delta0, duration, -duration / 2.0);
  s.second_ = PulseParams::make(omega_max, delta0, duration, duration / 2.0,
                                second_pulse_sign);
  return s;
}

double PulseSequence::omega0(double t) const { return rydcz::omega0(t, active(t)); }
double PulseSequence::delta(double t) const { return delta_t(t, active(t)); }
double PulseSequence::cd(double t) const { return cd_term(t, active(t)); }
Complex PulseSequence::rabi(double t) const { return complex_rabi(t, active(t)); }

TwoPhotonPulseParams TwoPhotonPulseParams::make(PulseSequence base,
                                                double detuning,
                                                bool flipped_sign) {
  if (!(detuning < 0.0)) {
    throw std::invalid_argument("two-photon intermediate detuning must be negative");
  }
  TwoPhotonPulseParams p;
  p.base = base;
  p.intermediate_detuning = detuning;
  p.flipped_sign = flipped_sign;
  return p;
}

Complex two_photon_step_rabi(double t, const TwoPhotonPulseParams& p) {
  if (!(p.intermediate_detuning < 0.0)) {
    throw std::invalid_argument("two-photon intermediate detuning must be negative");
  }
  const double radical_sign = p.flipped_sign ? +2.0 : -2.0;
  return std::sqrt(radical_sign * p.intermediate_detuning * p.base.rabi(t));
}

Complex two_photon_reconstruct(double t, const TwoPhotonPulseParams& p) {
  const Complex o1 = two_photon_step_rabi(t, p);
  return o1 * o1 / (2.0 * p.intermediate_detuning);
}

Complex BranchContinuousSqrt::operator()(Complex square) {
  Complex root = std::sqrt(square);
  // Choose the sign closer to the previous sample; the cut crossing shows up
  // as |root - last| > |root + last|.
  if (std::norm(root - last_) > std::norm(root + last_)) root = -root;
  if (std::abs(root) > 1e-300) last_ = root;
  return root;
}

ThreePhotonPulseParams ThreePhotonPulseParams::make(PulseSequence base,
                                                    double omega2,
                                                    double omega3) {
  if (!(omega2 > 0.0)) throw std::invalid_argument("omega2 must be > 0");
  if (!(omega3 > 0.0)) throw std::invalid_argument("omega3 must be > 0");
  ThreePhotonPulseParams p;
  p.base = base;
  p.omega2 = omega2;
  p.omega3 = omega3;
  return p;
}

Complex three_photon_first_step(double t, const ThreePhotonPulseParams& p) {
  if (p.omega3 == 0.0) throw std::invalid_argument("omega3 must be nonzero");
  return (p.omega2 / p.omega3) * p.base.rabi(t);
}

PhaseJumpParams PhaseJumpParams::make(double omega1_amp, double detuning,
                                      double half_time, double delta_psi,
                                      double omega2, double omega3) {
  if (!(half_time > 0.0)) throw std::invalid_argument("half_time must be > 0");
  PhaseJumpParams p;
  p.omega1_amp = omega1_amp;
  p.detuning = detuning;
  p.half_time = half_time;
  p.delta_psi = delta_psi;
  p.omega2 = omega2;
  p.omega3 = omega3;
  return p;
}

Complex phase_jump_profile(double t, const PhaseJumpParams& p) {
  if (t < 0.0 || t > 2.0 * p.half_time) return {0.0, 0.0};
  if (t < p.half_time) return {p.omega1_amp, 0.0};
  return std::polar(p.omega1_amp, p.delta_psi);
}

}  // namespace rydcz
