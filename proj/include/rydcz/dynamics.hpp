// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydcz/model.hpp"

// Propagation of pure states (Schrodinger) and density matrices (Lindblad
// master equation) under time-dependent Hamiltonians, with an embedded
// Dormand-Prince 5(4) integrator and dense output for observable recording.

namespace rydcz {

// Sign convention of the equation of motion: drho/dt = s*i[H,rho] + L[rho]
// with Schrodinger counterpart dpsi/dt = s*iH psi.  The analytic pulse
// construction Omega0 + i*Omega_CD is transitionless under plus_i; minus_i is
// the more common textbook sign (the two are complex conjugates).
enum class EquationSign { plus_i, minus_i };

inline double equation_sign_factor(EquationSign s) {
  return s == EquationSign::plus_i ? +1.0 : -1.0;
}

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  long max_steps = 80'000'000;
  double initial_step = 0.0;  // 0 = choose automatically
};

class PropagationError : public std::runtime_error {
 public:
  explicit PropagationError(const std::string& what) : std::runtime_error(what) {}
};

// Fills H(t) into a preallocated matrix.
using HamiltonianFn = std::function<void(double, ComplexMatrix&)>;

struct QuantumState {
  bool density = false;
  ComplexVector vec;  // pure
  ComplexMatrix mat;  // density
  double time = 0.0;

  static QuantumState pure(ComplexVector v, double t = 0.0);
  static QuantumState density_matrix(ComplexMatrix m, double t = 0.0);
  int dim() const;
};

// Time series of a propagation on a uniform recording grid (dense
// interpolation between accepted steps, independent of internal step sizes).
// Pure runs keep full state snapshots; density runs keep populations plus the
// final density matrix.
struct Trajectory {
  std::vector<double> times;
  std::vector<ComplexVector> states;       // pure runs
  std::vector<Eigen::VectorXd> populations;  // density runs (all diagonals)
  QuantumState final_state;
  bool density = false;

  long steps_accepted = 0;
  long steps_rejected = 0;
  long rhs_evaluations = 0;
};

// Solves dpsi/dt = s * i H(t) psi.  psi0 must be normalized; the final norm
// drift beyond 1e-8 aborts with a diagnostic, as do step-size underflow and
// non-finite values.  `breakpoints` lists interior times where H(t) is
// discontinuous; integration restarts there.
Trajectory propagate_schrodinger(const HamiltonianFn& hamiltonian,
                                 const ComplexVector& psi0, double t0,
                                 double t1, const IntegratorOptions& options,
                                 int samples, EquationSign sign,
                                 const std::vector<double>& breakpoints = {});

// Integrates drho/dt = s*i[H,rho] + sum_k (L rho L+ - {L+L, rho}/2).
// Trace drift beyond 1e-6 aborts with a diagnostic.
Trajectory propagate_lindblad(const HamiltonianFn& hamiltonian,
                              std::span<const ComplexMatrix> lindblad_ops,
                              const ComplexMatrix& rho0, double t0, double t1,
                              const IntegratorOptions& options, int samples,
                              EquationSign sign,
                              const std::vector<double>& breakpoints = {});

double population(const QuantumState& state, int index);
double population(const QuantumState& state, const ComplexVector& direction);
Complex coherence(const QuantumState& state, int a, int b);

// arg<label|psi(t1)> - arg<label|psi(t0)>, unwrapped along the recorded grid
// by nearest-branch continuation.  `continuous` is false when the amplitude
// dipped below 1e-3 somewhere (the unwrapped value may then be off by 2*pi;
// the wrapped value is still exact).  Throws when an endpoint amplitude is
// below 1e-6.
struct PhaseResult {
  double phase = 0.0;
  bool continuous = true;
  double min_amplitude = 0.0;
};
PhaseResult accumulated_phase(const Trajectory& trajectory, int index);

double wrap_angle(double radians);  // into (-pi, pi]

}  // namespace rydcz
