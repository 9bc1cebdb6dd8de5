// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "rydcz/gate.hpp"
#include "rydcz/units.hpp"

using namespace rydcz;
using units::two_pi;

namespace {

ProtocolConfig fig2_config() {
  ProtocolConfig c;
  c.scheme = SchemeKind::single_photon;
  c.omega_max = two_pi * 20.0;
  c.delta0 = two_pi * 10.0;
  c.duration = 0.05;
  c.blockade = Blockade::infinite();
  return c;
}

ProtocolConfig cs_config() {
  ProtocolConfig c = fig2_config();
  c.decay = {rydberg_decay(cs_107p())};
  c.blockade = Blockade::finite(two_pi * 4000.0);
  return c;
}

}  // namespace

TEST_SUITE("gate") {

TEST_CASE("bell fidelity witness on constructed states") {
  const TwoAtomSystem system(LevelScheme::make(SchemeKind::single_photon),
                             Blockade::infinite());
  const int i00 = system.state_index("0", "0");
  const int i11 = system.state_index("1", "1");

  ComplexVector bell = ComplexVector::Zero(system.dim());
  bell[i00] = 1.0 / std::sqrt(2.0);
  bell[i11] = 1.0 / std::sqrt(2.0);
  CHECK(bell_fidelity(QuantumState::pure(bell, 0.0), system) ==
        doctest::Approx(1.0).epsilon(1e-14));

  ComplexMatrix dephased = ComplexMatrix::Zero(system.dim(), system.dim());
  dephased(i00, i00) = 0.5;
  dephased(i11, i11) = 0.5;
  CHECK(bell_fidelity(QuantumState::density_matrix(dephased, 0.0), system) ==
        doctest::Approx(0.5).epsilon(1e-14));

  ComplexVector vac = ComplexVector::Zero(system.dim());
  vac[i00] = 1.0;
  CHECK(bell_fidelity(QuantumState::pure(vac, 0.0), system) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("ideal single-qubit gates") {
  const TwoAtomSystem system(LevelScheme::make(SchemeKind::single_photon),
                             Blockade::infinite());
  ComplexVector psi = ComplexVector::Zero(system.dim());
  psi[system.state_index("0", "0")] = 0.5;
  psi[system.state_index("0", "1")] = 0.5;
  psi[system.state_index("1", "r")] = 1.0 / std::sqrt(2.0);
  QuantumState state = QuantumState::pure(psi, 0.0);

  // involution on the logical subspace, identity on |r>
  QuantumState twice = ideal_hadamard(ideal_hadamard(state, system, 0), system, 0);
  CHECK((twice.vec - state.vec).norm() < 1e-14);

  // H (x) H on |00> gives the uniform logical superposition
  ComplexVector vac = ComplexVector::Zero(system.dim());
  vac[system.state_index("0", "0")] = 1.0;
  QuantumState plus = ideal_hadamard(
      ideal_hadamard(QuantumState::pure(vac, 0.0), system, 0), system, 1);
  for (const char* a : {"0", "1"}) {
    for (const char* b : {"0", "1"}) {
      CHECK(std::abs(plus.vec[system.state_index(a, b)] - Complex(0.5, 0.0)) <
            1e-14);
    }
  }

  // phase gate marks |1> of the chosen atom only
  QuantumState marked = ideal_phase(plus, system, 1, M_PI / 3.0);
  CHECK(std::arg(marked.vec[system.state_index("0", "1")]) ==
        doctest::Approx(M_PI / 3.0).epsilon(1e-14));
  CHECK(std::arg(marked.vec[system.state_index("0", "0")]) ==
        doctest::Approx(0.0));

  // density-matrix conjugation matches the pure path
  const ComplexMatrix rho = plus.vec * plus.vec.adjoint();
  QuantumState rho_marked = ideal_phase(
      QuantumState::density_matrix(rho, 0.0), system, 1, M_PI / 3.0);
  CHECK((rho_marked.mat - marked.vec * marked.vec.adjoint()).cwiseAbs().maxCoeff() <
        1e-14);
}

TEST_CASE("a perfect CZ in the circuit scores fidelity one") {
  const TwoAtomSystem system(LevelScheme::make(SchemeKind::single_photon),
                             Blockade::infinite());
  ComplexVector vac = ComplexVector::Zero(system.dim());
  vac[system.state_index("0", "0")] = 1.0;
  QuantumState state = QuantumState::pure(vac, 0.0);
  state = ideal_hadamard(state, system, 0);
  state = ideal_hadamard(state, system, 1);
  // diag(1,1,1,-1) on the logical block
  state.vec[system.state_index("1", "1")] *= -1.0;
  state = ideal_hadamard(state, system, 1);
  CHECK(bell_fidelity(state, system) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("zero drive is the identity gate") {
  ProtocolConfig c = fig2_config();
  c.omega_max = 0.0;
  c.jobs = 1;
  const GateRun run = run_cz(c);
  for (const InputOutcome& o : run.outcomes) {
    CHECK(o.return_population == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(o.phase_defined);
    CHECK(std::abs(o.phase) < 1e-10);
    CHECK(o.leakage < 1e-12);
  }
  CHECK(std::abs(cz_conditional_phase(run)) < 1e-9);
}

TEST_CASE("Fig. 2 run: pi phases, inert |00>, symmetric outcomes") {
  const GateRun run = run_cz(fig2_config());

  CHECK(run.phases_defined);
  CHECK(run.phi00 == 0.0);
  CHECK(std::abs(wrap_angle(run.phi01 - M_PI)) < 2e-2);
  CHECK(std::abs(wrap_angle(run.phi11 - M_PI)) < 2e-2);
  CHECK(std::abs(wrap_angle(std::abs(cz_conditional_phase(run)) - M_PI)) < 2e-2);

  for (const InputOutcome& o : run.outcomes) {
    CHECK(o.return_population > 0.999);
  }
  // |00> does not move at all
  const InputOutcome& o00 = run.outcome("00");
  CHECK(o00.return_population == doctest::Approx(1.0).epsilon(1e-12));
  ComplexVector e00 = ComplexVector::Zero(o00.final_state.dim());
  const TwoAtomSystem system = fig2_config().system();
  e00[system.state_index("0", "0")] = 1.0;
  CHECK((o00.final_state.vec - e00).norm() < 1e-12);

  // symmetric driving: swapping control and target is invisible
  const InputOutcome& o01 = run.outcome("01");
  const InputOutcome& o10 = run.outcome("10");
  CHECK(std::abs(run.phi01 - run.phi10) < 1e-9);
  CHECK(std::abs(o01.return_population - o10.return_population) < 1e-9);
  CHECK(std::abs(o01.leakage - o10.leakage) < 1e-9);
}

TEST_CASE("conditional phase arithmetic") {
  GateRun run;
  run.phases_defined = true;
  run.phi00 = 0.0;
  run.phi01 = M_PI;
  run.phi10 = M_PI;
  run.phi11 = M_PI;
  CHECK(std::abs(std::abs(cz_conditional_phase(run)) - M_PI) < 1e-14);
  run.phi01 = run.phi10 = run.phi11 = 0.0;
  CHECK(cz_conditional_phase(run) == 0.0);
  run.phases_defined = false;
  CHECK_THROWS_AS(cz_conditional_phase(run), std::invalid_argument);
}

TEST_CASE("corrected logical map is diag(1,1,1,-1)") {
  const ProtocolConfig c = fig2_config();
  const TwoAtomSystem system = c.system();
  const GateRun run = run_cz(c);

  Eigen::Matrix4cd logical = Eigen::Matrix4cd::Zero();
  const std::array<std::pair<const char*, const char*>, 4> basis = {
      {{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}}};
  for (int col = 0; col < 4; ++col) {
    QuantumState corrected = ideal_phase(
        run.outcomes[static_cast<std::size_t>(col)].final_state, system, 0,
        -run.phi01);
    corrected = ideal_phase(corrected, system, 1, -run.phi01);
    for (int row = 0; row < 4; ++row) {
      logical(row, col) =
          corrected.vec[system.state_index(basis[row].first, basis[row].second)];
    }
  }
  Eigen::Matrix4cd target = Eigen::Matrix4cd::Identity();
  target(3, 3) = -1.0;
  const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(logical - target);
  CHECK(svd.singularValues()[0] < 5e-3);
}

TEST_CASE("bell preparation, ideal and with decay") {
  SUBCASE("ideal, infinite blockade") {
    const BellScore score = prepare_bell(fig2_config());
    CHECK(score.fidelity > 1.0 - 1e-4);
    CHECK(score.p00 == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(score.p11 == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(score.leakage < 1e-4);
  }
  SUBCASE("explicit correction equals the calibrated one") {
    const ProtocolConfig base = fig2_config();
    const GateRun run = run_cz(base);
    ProtocolConfig explicit_config = base;
    explicit_config.phase_correction = PhaseCorrectionMode::explicit_value;
    explicit_config.explicit_phase = -run.phi01;
    const BellScore a = prepare_bell(base);
    const BellScore b = prepare_bell(explicit_config);
    CHECK(a.fidelity == doctest::Approx(b.fidelity).epsilon(1e-12));
  }
  SUBCASE("no correction scores the uncorrected witness") {
    ProtocolConfig c = fig2_config();
    c.phase_correction = PhaseCorrectionMode::none;
    const BellScore score = prepare_bell(c);
    CHECK(score.fidelity == doctest::Approx(score.fidelity_uncorrected).epsilon(1e-12));
  }
  SUBCASE("hadamard on the control atom works as well") {
    ProtocolConfig c = fig2_config();
    c.hadamard_on = 0;
    CHECK(prepare_bell(c).fidelity > 1.0 - 1e-4);
  }
}

TEST_CASE("frozen regression anchors") {
  // much tighter than the headline tolerances: catches silent numerical
  // drift of the pulse algebra, model assembly or integrator
  SUBCASE("ideal, infinite blockade") {
    const double f = prepare_bell(fig2_config()).fidelity;
    CHECK(f == doctest::Approx(0.99999650858947).epsilon(2e-11));
  }
  SUBCASE("Cs with decay at B/2pi = 4 GHz") {
    ProtocolConfig c = cs_config();
    c.integrator.rtol = 1e-9;
    c.integrator.atol = 1e-11;
    const double f = prepare_bell(c).fidelity;
    CHECK(f == doctest::Approx(0.99990377134).epsilon(1e-8));
  }
}

TEST_CASE("step-halving convergence of the Bell fidelity") {
  ProtocolConfig c = fig2_config();
  const double f_default = prepare_bell(c).fidelity;
  c.integrator.rtol /= 2.0;
  c.integrator.atol /= 2.0;
  const double f_halved = prepare_bell(c).fidelity;
  CHECK(std::abs(f_default - f_halved) < 1e-9);
}

TEST_CASE("effective two-level oracle agrees with the full model at strong blockade") {
  // full two-atom propagation of |11> at B/2pi = 100 GHz vs the
  // sqrt(2)-enhanced two-level reduction
  ProtocolConfig c = fig2_config();
  c.blockade = Blockade::finite(two_pi * 100000.0);
  c.jobs = 1;
  const TwoAtomSystem system = c.system();
  const DriveProfile drive = c.drive();

  const HamiltonianFn full = [&system, drive](double t, ComplexMatrix& h) {
    assemble_two_atom_hamiltonian(system, drive, t, h);
  };
  ComplexVector psi0 = ComplexVector::Zero(system.dim());
  psi0[system.state_index("1", "1")] = 1.0;
  const Trajectory full_traj = propagate_schrodinger(
      full, psi0, drive.begin(), drive.end(), c.integrator, 100,
      EquationSign::plus_i, drive.seams());

  const PulseSequence seq =
      PulseSequence::double_arp(c.omega_max, c.delta0, c.duration);
  const HamiltonianFn eff = [seq](double t, ComplexMatrix& h) {
    h = effective_blockaded_two_level(seq, t);
  };
  ComplexVector e0(2);
  e0 << 1.0, 0.0;
  const Trajectory eff_traj =
      propagate_schrodinger(eff, e0, seq.begin(), seq.end(), c.integrator, 100,
                            EquationSign::plus_i, {0.0});

  // embed (c11, cW) back into the two-atom space
  ComplexVector embedded = ComplexVector::Zero(system.dim());
  embedded[system.state_index("1", "1")] = eff_traj.final_state.vec[0];
  embedded[system.state_index("1", "r")] =
      eff_traj.final_state.vec[1] / std::sqrt(2.0);
  embedded[system.state_index("r", "1")] =
      eff_traj.final_state.vec[1] / std::sqrt(2.0);
  const double overlap = std::abs(embedded.dot(full_traj.final_state.vec));
  CHECK(overlap > 1.0 - 1e-5);
}

TEST_CASE("blockade truncation is consistent with a very large finite B") {
  ProtocolConfig inf = fig2_config();
  ProtocolConfig big = fig2_config();
  big.blockade = Blockade::finite(two_pi * 100000.0);
  const double f_inf = prepare_bell(inf).fidelity;
  const double f_big = prepare_bell(big).fidelity;
  CHECK(std::abs(f_inf - f_big) < 1e-5);
}

TEST_CASE("decay run reports populations but no phases") {
  ProtocolConfig c = cs_config();
  c.integrator.rtol = 1e-9;
  c.integrator.atol = 1e-11;
  const GateRun run = run_cz(c);
  CHECK_FALSE(run.phases_defined);
  for (const InputOutcome& o : run.outcomes) {
    CHECK_FALSE(o.phase_defined);
    CHECK(o.return_population > 0.99);
    CHECK(o.leakage >= 0.0);
    CHECK(o.final_state.density);
  }
  // leakage shows up only for inputs that excite the Rydberg state, and for
  // these lifetimes it sits at the 1e-4 scale
  CHECK(run.outcome("00").leakage < 1e-10);
  CHECK(run.outcome("11").leakage > 1e-5);
  CHECK(run.outcome("11").leakage < 1e-3);
}

TEST_CASE("ground-state populations dip to zero mid-sequence and return") {
  const ProtocolConfig c = fig2_config();
  const TwoAtomSystem system = c.system();
  const DriveProfile drive = c.drive();
  const HamiltonianFn h = [&system, drive](double t, ComplexMatrix& m) {
    assemble_two_atom_hamiltonian(system, drive, t, m);
  };
  for (const char* input : {"01", "11"}) {
    ComplexVector psi0 = ComplexVector::Zero(system.dim());
    const int idx = system.state_index(input[0] == '0' ? "0" : "1", "1");
    psi0[idx] = 1.0;
    const Trajectory traj =
        propagate_schrodinger(h, psi0, drive.begin(), drive.end(), c.integrator,
                              2000, c.equation_sign, drive.seams());
    double lowest = 1.0;
    for (const ComplexVector& s : traj.states) {
      lowest = std::min(lowest, std::norm(s[idx]));
    }
    CHECK(lowest < 0.05);  // full transfer out of the ground state mid-pulse
    CHECK(std::norm(traj.final_state.vec[idx]) > 0.999);
  }
}

TEST_CASE("leakage accounting") {
  const TwoAtomSystem system(
      LevelScheme::make(SchemeKind::single_photon, {rydberg_decay(cs_107p())}),
      Blockade::infinite());
  ComplexVector psi = ComplexVector::Zero(system.dim());
  psi[system.state_index("d", "1")] = 1.0;
  CHECK(leakage(QuantumState::pure(psi, 0.0), system) ==
        doctest::Approx(1.0).epsilon(1e-12));
  psi.setZero();
  psi[system.state_index("1", "r")] = 1.0;
  CHECK(leakage(QuantumState::pure(psi, 0.0), system) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("phase-jump calibration returns both channels with a CZ phase") {
  // ideal two-level check of the jump protocol numbers: OmegaT = 4.29268,
  // delta/Omega = 0.377371, jump 3.90242
  const double omega_eff = 10.0;  // rad/us
  const PhaseJumpParams pj = PhaseJumpParams::make(
      omega_eff, -3.77371, 0.429268, 3.90242, two_pi * 10000.0, two_pi * 100.0);
  const auto two_level = [&](double scale) {
    return [pj, scale](double t, ComplexMatrix& h) {
      h.resize(2, 2);
      const Complex omega = scale * phase_jump_profile(t, pj);
      h(0, 0) = 0.0;
      h(0, 1) = 0.5 * std::conj(omega);
      h(1, 0) = 0.5 * omega;
      h(1, 1) = pj.detuning;
    };
  };
  ComplexVector g(2);
  g << 1.0, 0.0;
  const std::vector<double> seam = {pj.half_time};
  const Trajectory t01 = propagate_schrodinger(
      two_level(1.0), g, 0.0, 2.0 * pj.half_time, {}, 2000, EquationSign::plus_i,
      seam);
  const Trajectory t11 = propagate_schrodinger(
      two_level(std::sqrt(2.0)), g, 0.0, 2.0 * pj.half_time, {}, 2000,
      EquationSign::plus_i, seam);
  CHECK(std::norm(t01.final_state.vec[0]) > 1.0 - 1e-6);
  CHECK(std::norm(t11.final_state.vec[0]) > 1.0 - 1e-6);
  const double phi01 = accumulated_phase(t01, 0).phase;
  const double phi11 = accumulated_phase(t11, 0).phase;
  CHECK(std::abs(std::abs(wrap_angle(2.0 * phi01 - phi11)) - M_PI) < 1e-4);
}

TEST_CASE("phase-jump config plumbing") {
  ProtocolConfig c;
  c.scheme = SchemeKind::three_photon;
  c.protocol = Protocol::phase_jump;
  c.omega2 = two_pi * 10000.0;
  c.omega3 = two_pi * 100.0;
  c.phase_jump.omega1_auto = true;
  c.phase_jump.effective_rabi = 10.0;
  c.phase_jump.detuning = -3.77371;
  c.phase_jump.half_time = 0.429268;
  c.phase_jump.delta_psi = 3.90242;
  // omega1 = effective * omega2 / omega3
  CHECK(c.phase_jump_omega1() == doctest::Approx(1000.0).epsilon(1e-12));
  const DriveProfile drive = c.drive();
  CHECK(drive.begin() == 0.0);
  CHECK(drive.end() == doctest::Approx(2.0 * 0.429268));
  CHECK(drive.seams() == std::vector<double>{0.429268});

  ProtocolConfig bad = c;
  bad.protocol = Protocol::phase_jump;
  bad.scheme = SchemeKind::single_photon;
  CHECK_THROWS_AS(bad.drive(), std::invalid_argument);
}

}  // TEST_SUITE
