// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include "rydcz/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rydcz {

std::string_view to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::single_photon: return "single_photon";
    case SchemeKind::two_photon: return "two_photon";
    case SchemeKind::three_photon: return "three_photon";
  }
  throw std::logic_error("bad SchemeKind");
}

SchemeKind scheme_from_string(std::string_view name) {
  if (name == "single_photon") return SchemeKind::single_photon;
  if (name == "two_photon") return SchemeKind::two_photon;
  if (name == "three_photon") return SchemeKind::three_photon;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

LevelScheme LevelScheme::make(SchemeKind kind, std::vector<DecayChannel> decay) {
  LevelScheme s;
  s.kind_ = kind;
  switch (kind) {
    case SchemeKind::single_photon: s.labels_ = {"0", "1", "d", "r"}; break;
    case SchemeKind::two_photon: s.labels_ = {"0", "1", "d", "p", "r"}; break;
    case SchemeKind::three_photon: s.labels_ = {"0", "1", "d", "p", "s", "r"}; break;
  }
  s.decay_ = std::move(decay);
  s.validate();
  return s;
}

int LevelScheme::index(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw std::invalid_argument("unknown level label '" + std::string(label) + "'");
}

void LevelScheme::validate() const {
  for (const DecayChannel& ch : decay_) {
    const int k = index(ch.from);
    if (ch.gamma < 0.0) {
      throw std::invalid_argument("decay rate for '" + ch.from + "' must be >= 0");
    }
    double sum = 0.0;
    for (const auto& [label, b] : ch.branches) {
      const int j = index(label);
      if (j >= k) {
        throw std::invalid_argument("branch " + ch.from + "->" + label +
                                    " must go to a strictly lower level");
      }
      if (b < 0.0) throw std::invalid_argument("branching ratios must be >= 0");
      sum += b;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("branching ratios from '" + ch.from +
                                  "' must sum to 1");
    }
  }
}

const AtomSpecies& cs_107p() {
  static const AtomSpecies s{"Cs107p", 1.0 / 540.0, 1.0 / 16.0, 1.0 / 16.0,
                             7.0 / 8.0};
  return s;
}

const AtomSpecies& rb_113p() {
  static const AtomSpecies s{"Rb113p", 1.0 / 540.0, 1.0 / 8.0, 1.0 / 8.0,
                             3.0 / 4.0};
  return s;
}

DecayChannel rydberg_decay(const AtomSpecies& species) {
  return DecayChannel{"r",
                      species.gamma_r,
                      {{"0", species.b_0r}, {"1", species.b_1r}, {"d", species.b_dr}}};
}

TwoAtomSystem::TwoAtomSystem(LevelScheme scheme, Blockade blockade)
    : scheme_(std::move(scheme)), blockade_(blockade) {
  const int n = scheme_.size();
  const int r = scheme_.rydberg_index();
  map_.assign(n * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (blockade_.is_infinite && a == r && b == r) continue;
      map_[a * n + b] = static_cast<int>(kept_.size());
      kept_.push_back(a * n + b);
    }
  }
}

int TwoAtomSystem::state_index(int a, int b) const {
  const int n = atom_dim();
  if (a < 0 || a >= n || b < 0 || b >= n) {
    throw std::out_of_range("atom level index out of range");
  }
  return map_[a * n + b];
}

int TwoAtomSystem::state_index(std::string_view a, std::string_view b) const {
  return state_index(scheme_.index(a), scheme_.index(b));
}

std::string TwoAtomSystem::state_label(int truncated_index) const {
  const int prod = kept_.at(static_cast<std::size_t>(truncated_index));
  const int n = atom_dim();
  return scheme_.labels()[prod / n] + scheme_.labels()[prod % n];
}

DriveProfile DriveProfile::single_photon(PulseSequence seq) {
  DriveProfile d;
  d.scheme_ = SchemeKind::single_photon;
  d.begin_ = seq.begin();
  d.end_ = seq.end();
  d.impl_ = std::move(seq);
  return d;
}

DriveProfile DriveProfile::two_photon(TwoPhotonPulseParams params) {
  DriveProfile d;
  d.scheme_ = SchemeKind::two_photon;
  d.begin_ = params.base.begin();
  d.end_ = params.base.end();
  d.impl_ = std::move(params);
  return d;
}

DriveProfile DriveProfile::three_photon(ThreePhotonPulseParams params) {
  DriveProfile d;
  d.scheme_ = SchemeKind::three_photon;
  d.begin_ = params.base.begin();
  d.end_ = params.base.end();
  d.impl_ = std::move(params);
  return d;
}

DriveProfile DriveProfile::phase_jump(PhaseJumpParams params) {
  DriveProfile d;
  d.scheme_ = SchemeKind::three_photon;
  d.begin_ = 0.0;
  d.end_ = 2.0 * params.half_time;
  d.impl_ = std::move(params);
  return d;
}

std::vector<double> DriveProfile::seams() const {
  if (const auto* pj = std::get_if<PhaseJumpParams>(&impl_)) {
    return {pj->half_time};
  }
  return {0.5 * (begin_ + end_)};
}

DriveSample DriveProfile::at(double t) const {
  DriveSample s;
  if (const auto* seq = std::get_if<PulseSequence>(&impl_)) {
    s.step1 = seq->rabi(t);
    s.delta_r = seq->delta(t);
  } else if (const auto* tp = std::get_if<TwoPhotonPulseParams>(&impl_)) {
    const Complex o1 = two_photon_step_rabi(t, *tp);
    s.step1 = o1;
    s.step2 = o1;  // identically shaped steps
    s.delta_r = tp->base.delta(t);
    s.delta_p = tp->intermediate_detuning;
  } else if (const auto* th = std::get_if<ThreePhotonPulseParams>(&impl_)) {
    s.step1 = three_photon_first_step(t, *th);
    s.step2 = Complex(th->omega2, 0.0);
    s.step3 = th->omega3;
    s.delta_r = th->base.delta(t);
  } else {
    const auto& pj = std::get<PhaseJumpParams>(impl_);
    s.step1 = phase_jump_profile(t, pj);
    s.step2 = Complex(pj.omega2, 0.0);
    s.step3 = pj.omega3;
    s.delta_r = pj.detuning;
  }
  return s;
}

ComplexMatrix single_atom_hamiltonian(const LevelScheme& scheme,
                                      const DriveProfile& drive, double t) {
  if (scheme.kind() != drive.scheme()) {
    throw std::invalid_argument("drive profile does not match level scheme");
  }
  const int n = scheme.size();
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  const DriveSample s = drive.at(t);
  const int one = 1;
  switch (scheme.kind()) {
    case SchemeKind::single_photon: {
      const int r = 3;
      h(r, one) = 0.5 * s.step1;
      h(one, r) = 0.5 * std::conj(s.step1);
      h(r, r) = s.delta_r;
      break;
    }
    case SchemeKind::two_photon: {
      const int p = 3, r = 4;
      h(p, one) = 0.5 * s.step1;
      h(one, p) = 0.5 * std::conj(s.step1);
      h(r, p) = 0.5 * s.step2;
      h(p, r) = 0.5 * std::conj(s.step2);
      h(p, p) = s.delta_p;
      h(r, r) = s.delta_r;
      break;
    }
    case SchemeKind::three_photon: {
      const int p = 3, ss = 4, r = 5;
      h(p, one) = 0.5 * s.step1;
      h(one, p) = 0.5 * std::conj(s.step1);
      h(ss, p) = 0.5 * s.step2;
      h(p, ss) = 0.5 * std::conj(s.step2);
      h(r, ss) = 0.5 * s.step3;
      h(ss, r) = 0.5 * s.step3;
      h(r, r) = s.delta_r;
      break;
    }
  }
  return h;
}

void assemble_two_atom_hamiltonian(const TwoAtomSystem& system,
                                   const DriveProfile& drive, double t,
                                   ComplexMatrix& out) {
  const int n = system.atom_dim();
  const int dim = system.dim();
  const ComplexMatrix h1 = single_atom_hamiltonian(system.scheme(), drive, t);
  out.setZero(dim, dim);
  // Kronecker sum over the kept basis; single-atom H is small and sparse
  // enough for a plain nonzero scan.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex v = h1(i, j);
      if (v == Complex(0.0, 0.0)) continue;
      for (int a = 0; a < n; ++a) {
        const int row_c = system.state_index(i, a);
        const int col_c = system.state_index(j, a);
        if (row_c >= 0 && col_c >= 0) out(row_c, col_c) += v;
        const int row_t = system.state_index(a, i);
        const int col_t = system.state_index(a, j);
        if (row_t >= 0 && col_t >= 0) out(row_t, col_t) += v;
      }
    }
  }
  if (!system.blockade().is_infinite) {
    const int r = system.scheme().rydberg_index();
    const int rr = system.state_index(r, r);
    out(rr, rr) += system.blockade().strength;
  }
}

ComplexMatrix two_atom_hamiltonian(const TwoAtomSystem& system,
                                   const DriveProfile& drive, double t) {
  ComplexMatrix h;
  assemble_two_atom_hamiltonian(system, drive, t, h);
  return h;
}

std::vector<LindbladChannel> lindblad_channels(const TwoAtomSystem& system) {
  std::vector<LindbladChannel> out;
  const LevelScheme& scheme = system.scheme();
  for (int atom = 0; atom < 2; ++atom) {
    for (const DecayChannel& ch : scheme.decay()) {
      if (ch.gamma == 0.0) continue;
      const int k = scheme.index(ch.from);
      for (const auto& [label, b] : ch.branches) {
        if (b == 0.0) continue;
        out.push_back({atom, k, scheme.index(label), b * ch.gamma});
      }
    }
  }
  return out;
}

std::vector<ComplexMatrix> lindblad_operators(const TwoAtomSystem& system) {
  std::vector<ComplexMatrix> ops;
  const int n = system.atom_dim();
  const int dim = system.dim();
  for (const LindbladChannel& ch : lindblad_channels(system)) {
    ComplexMatrix L = ComplexMatrix::Zero(dim, dim);
    const double amp = std::sqrt(ch.rate);
    for (int a = 0; a < n; ++a) {
      const int row = ch.atom == 0 ? system.state_index(ch.to, a)
                                   : system.state_index(a, ch.to);
      const int col = ch.atom == 0 ? system.state_index(ch.from, a)
                                   : system.state_index(a, ch.from);
      if (row >= 0 && col >= 0) L(row, col) = amp;
    }
    ops.push_back(std::move(L));
  }
  return ops;
}

Eigen::Matrix2cd effective_blockaded_two_level(const PulseSequence& pulses,
                                               double t) {
  Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
  const Complex omega = pulses.rabi(t);
  h(1, 0) = 0.5 * std::sqrt(2.0) * omega;
  h(0, 1) = std::conj(h(1, 0));
  h(1, 1) = pulses.delta(t);
  return h;
}

}  // namespace rydcz
