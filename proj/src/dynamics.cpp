// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include "rydcz/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rydcz {

QuantumState QuantumState::pure(ComplexVector v, double t) {
  QuantumState s;
  s.density = false;
  s.vec = std::move(v);
  s.time = t;
  return s;
}

QuantumState QuantumState::density_matrix(ComplexMatrix m, double t) {
  QuantumState s;
  s.density = true;
  s.mat = std::move(m);
  s.time = t;
  return s;
}

int QuantumState::dim() const {
  return density ? static_cast<int>(mat.rows()) : static_cast<int>(vec.size());
}

namespace {

double time_tolerance(double t) {
  return 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0);
}

// Dormand-Prince 5(4) with the classic Hairer dense-output interpolant,
// on flat complex vectors.
struct Dopri5 {
  using Rhs = std::function<void(double, const ComplexVector&, ComplexVector&)>;

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  // 5th-order weights (= the FSAL stage row) and the embedded 4th-order error.
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                          e3 = 500.0 / 1113 - 7571.0 / 16695,
                          e4 = 125.0 / 192 - 393.0 / 640,
                          e5 = -2187.0 / 6784 + 92097.0 / 339200,
                          e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0,
                          d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0,
                          d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0,
                          d7 = 69997945.0 / 29380423.0;

  Rhs rhs;
  IntegratorOptions options;
  // Optional fixup of the accepted state (e.g. re-Hermitization).  The change
  // is O(eps), so the FSAL slope is kept without re-evaluation.
  std::function<void(double, ComplexVector&)> post_step;

  long accepted = 0, rejected = 0, evaluations = 0;

  ComplexVector k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, yerr;
  ComplexVector rc1, rc2, rc3, rc4, rc5;
  double step_t = 0.0, step_h = 0.0;

  void eval(double t, const ComplexVector& y, ComplexVector& dy) {
    rhs(t, y, dy);
    ++evaluations;
  }

  double error_norm(const ComplexVector& y0, const ComplexVector& y1) const {
    double acc = 0.0;
    const auto n = y0.size();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = options.atol +
                        options.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      const double e = std::abs(yerr[i]) / sc;
      acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(n));
  }

  // One accepted step; requires k1 = f(t, y) on entry (FSAL), leaves it valid.
  void advance(double& t, double t_end, ComplexVector& y, double& h) {
    for (;;) {
      if (accepted + rejected >= options.max_steps) {
        throw PropagationError("integrator exceeded max_steps at t = " +
                               std::to_string(t));
      }
      h = std::min(h, t_end - t);
      if (h < time_tolerance(t)) {
        throw PropagationError("step size underflow at t = " + std::to_string(t));
      }

      ytmp = y + h * (a21 * k1);
      eval(t + c2 * h, ytmp, k2);
      ytmp = y + h * (a31 * k1 + a32 * k2);
      eval(t + c3 * h, ytmp, k3);
      ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
      eval(t + c4 * h, ytmp, k4);
      ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      eval(t + c5 * h, ytmp, k5);
      ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      eval(t + h, ytmp, k6);
      ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      eval(t + h, ynew, k7);
      yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      const double err = error_norm(y, ynew);
      if (!std::isfinite(err)) {
        throw PropagationError("non-finite values during integration at t = " +
                               std::to_string(t));
      }
      if (err <= 1.0) {
        rc1 = y;
        rc2 = ynew - y;
        rc3 = h * k1 - rc2;
        rc4 = rc2 - h * k7 - rc3;
        rc5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
        step_t = t;
        step_h = h;

        t += h;
        y.swap(ynew);
        if (post_step) post_step(t, y);
        k1.swap(k7);
        ++accepted;
        const double fac =
            err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= fac;
        return;
      }
      ++rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
    }
  }

  void interpolate(double t, ComplexVector& out) const {
    const double theta = (t - step_t) / step_h;
    const double omt = 1.0 - theta;
    out = rc1 + theta * (rc2 + omt * (rc3 + theta * (rc4 + omt * rc5)));
  }

  double initial_step(double t0, double t1) const {
    if (options.initial_step > 0.0) return options.initial_step;
    return std::max((t1 - t0) * 1e-6, 1e-12);
  }
};

// Drives the stepper over [t0, t1] and records the state on a uniform grid of
// `samples` intervals via dense interpolation.  Integration restarts at every
// interior breakpoint (drive discontinuities defeat the error estimate of a
// step that straddles them).
void run_integration(Dopri5& stepper, double t0, double t1, ComplexVector& y,
                     int samples, const std::vector<double>& breakpoints,
                     const std::function<void(double, const ComplexVector&)>& record) {
  if (!(t1 > t0)) throw PropagationError("time span must be increasing");
  std::vector<double> stops;
  for (double b : breakpoints) {
    if (b > t0 + time_tolerance(t0) && b < t1 - time_tolerance(t1)) stops.push_back(b);
  }
  std::sort(stops.begin(), stops.end());
  stops.push_back(t1);

  const int grid = std::max(samples, 1);
  double t = t0;
  record(t0, y);
  int next_sample = 1;
  double h = stepper.initial_step(t0, t1);
  ComplexVector interp(y.size());
  for (const double stop : stops) {
    stepper.eval(t, y, stepper.k1);  // fresh slope: H may jump at a stop
    while (t < stop) {
      stepper.advance(t, stop, y, h);
      if (stop - t < time_tolerance(t)) t = stop;
      while (next_sample <= grid) {
        const double ts = t0 + (t1 - t0) * next_sample / grid;
        if (ts > t + time_tolerance(t)) break;
        if (next_sample == grid) {
          record(t1, y);  // endpoint: accepted state, not the interpolant
        } else {
          stepper.interpolate(ts, interp);
          record(ts, interp);
        }
        ++next_sample;
      }
    }
  }
}

struct SparseEntry {
  int row;
  int col;
  Complex value;
};

}  // namespace

Trajectory propagate_schrodinger(const HamiltonianFn& hamiltonian,
                                 const ComplexVector& psi0, double t0,
                                 double t1, const IntegratorOptions& options,
                                 int samples, EquationSign sign,
                                 const std::vector<double>& breakpoints) {
  const int dim = static_cast<int>(psi0.size());
  if (std::abs(psi0.norm() - 1.0) > 1e-9) {
    throw PropagationError("initial state is not normalized");
  }
  const Complex is(0.0, equation_sign_factor(sign));

  ComplexMatrix h(dim, dim);
  Dopri5 stepper;
  stepper.options = options;
  stepper.rhs = [&](double t, const ComplexVector& y, ComplexVector& dy) {
    hamiltonian(t, h);
    dy.noalias() = is * (h * y);
  };
  // norm conservation is asserted at every accepted step: 1e-8 at the default
  // rtol = 1e-10, with proportionally more random-walk headroom when run looser
  const double norm_guard = std::max(1e-8, 1e3 * options.rtol);
  stepper.post_step = [&](double t, ComplexVector& y) {
    if (std::abs(y.norm() - 1.0) > norm_guard) {
      throw PropagationError("norm drift exceeded " + std::to_string(norm_guard) +
                             " at t = " + std::to_string(t));
    }
  };

  Trajectory traj;
  traj.density = false;
  ComplexVector y = psi0;
  run_integration(stepper, t0, t1, y, samples, breakpoints,
                  [&](double t, const ComplexVector& s) {
                    traj.times.push_back(t);
                    traj.states.push_back(s);
                  });
  traj.final_state = QuantumState::pure(std::move(y), t1);
  traj.steps_accepted = stepper.accepted;
  traj.steps_rejected = stepper.rejected;
  traj.rhs_evaluations = stepper.evaluations;
  return traj;
}

Trajectory propagate_lindblad(const HamiltonianFn& hamiltonian,
                              std::span<const ComplexMatrix> lindblad_ops,
                              const ComplexMatrix& rho0, double t0, double t1,
                              const IntegratorOptions& options, int samples,
                              EquationSign sign,
                              const std::vector<double>& breakpoints) {
  const int dim = static_cast<int>(rho0.rows());
  if (rho0.cols() != dim) throw PropagationError("rho0 must be square");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-8 ||
      std::abs(rho0.trace().imag()) > 1e-10) {
    throw PropagationError("initial density matrix trace is not 1");
  }
  const double s = equation_sign_factor(sign);

  // The decay operators are time independent: precompute sum_k L+L and a
  // nonzero list per operator (they are a handful of entries each, so the
  // jump term is applied sparsely instead of by dense products).
  ComplexMatrix ldl = ComplexMatrix::Zero(dim, dim);
  std::vector<std::vector<SparseEntry>> jumps;
  for (const ComplexMatrix& L : lindblad_ops) {
    if (L.rows() != dim || L.cols() != dim) {
      throw PropagationError("Lindblad operator dimension mismatch");
    }
    ldl.noalias() += L.adjoint() * L;
    std::vector<SparseEntry> entries;
    for (int c = 0; c < dim; ++c) {
      for (int r = 0; r < dim; ++r) {
        if (L(r, c) != Complex(0.0, 0.0)) entries.push_back({r, c, L(r, c)});
      }
    }
    jumps.push_back(std::move(entries));
  }
  bool ldl_diagonal = true;
  for (int c = 0; c < dim && ldl_diagonal; ++c) {
    for (int r = 0; r < dim; ++r) {
      if (r != c && ldl(r, c) != Complex(0.0, 0.0)) {
        ldl_diagonal = false;
        break;
      }
    }
  }
  const Eigen::VectorXd ldl_diag = ldl.diagonal().real();
  const bool dissipative = !lindblad_ops.empty();

  ComplexMatrix h(dim, dim), work(dim, dim), lrho(dim, dim);
  Dopri5 stepper;
  stepper.options = options;
  stepper.rhs = [&](double t, const ComplexVector& y, ComplexVector& dy) {
    Eigen::Map<const ComplexMatrix> rho(y.data(), dim, dim);
    dy.resize(y.size());
    Eigen::Map<ComplexMatrix> drho(dy.data(), dim, dim);
    hamiltonian(t, h);
    work.noalias() = h * rho;
    drho = Complex(0.0, s) * (work - work.adjoint());
    if (dissipative) {
      for (const auto& entries : jumps) {
        lrho.setZero();
        for (const SparseEntry& e : entries) {
          lrho.row(e.row) += e.value * rho.row(e.col);
        }
        for (const SparseEntry& e : entries) {
          drho.col(e.row) += std::conj(e.value) * lrho.col(e.col);
        }
      }
      if (ldl_diagonal) {
        for (int c = 0; c < dim; ++c) {
          for (int r = 0; r < dim; ++r) {
            drho(r, c) -= 0.5 * (ldl_diag[r] + ldl_diag[c]) * rho(r, c);
          }
        }
      } else {
        work.noalias() = ldl * rho;
        drho -= 0.5 * work;
        work.noalias() = rho * ldl;
        drho -= 0.5 * work;
      }
    }
  };
  stepper.post_step = [&](double t, ComplexVector& y) {
    Eigen::Map<ComplexMatrix> rho(y.data(), dim, dim);
    work = 0.5 * (rho + rho.adjoint());
    rho = work;
    if (std::abs(rho.trace().real() - 1.0) > 1e-6) {
      throw PropagationError("trace drift exceeded 1e-6 at t = " + std::to_string(t));
    }
  };

  Trajectory traj;
  traj.density = true;
  ComplexVector y(static_cast<Eigen::Index>(dim) * dim);
  Eigen::Map<ComplexMatrix>(y.data(), dim, dim) = rho0;
  run_integration(stepper, t0, t1, y, samples, breakpoints,
                  [&](double t, const ComplexVector& v) {
                    Eigen::Map<const ComplexMatrix> rho(v.data(), dim, dim);
                    traj.times.push_back(t);
                    traj.populations.push_back(rho.diagonal().real());
                  });

  ComplexMatrix rho_final = Eigen::Map<const ComplexMatrix>(y.data(), dim, dim);
  traj.final_state = QuantumState::density_matrix(std::move(rho_final), t1);
  traj.steps_accepted = stepper.accepted;
  traj.steps_rejected = stepper.rejected;
  traj.rhs_evaluations = stepper.evaluations;
  return traj;
}

double population(const QuantumState& state, int index) {
  if (index < 0 || index >= state.dim()) {
    throw std::out_of_range("population: index out of range");
  }
  if (state.density) return state.mat(index, index).real();
  return std::norm(state.vec[index]);
}

double population(const QuantumState& state, const ComplexVector& direction) {
  if (direction.size() != state.dim()) {
    throw std::invalid_argument("population: direction dimension mismatch");
  }
  if (state.density) {
    return (direction.adjoint() * state.mat * direction)(0, 0).real();
  }
  return std::norm(direction.dot(state.vec));
}

Complex coherence(const QuantumState& state, int a, int b) {
  if (a < 0 || a >= state.dim() || b < 0 || b >= state.dim()) {
    throw std::out_of_range("coherence: index out of range");
  }
  if (state.density) return state.mat(a, b);
  return state.vec[a] * std::conj(state.vec[b]);
}

PhaseResult accumulated_phase(const Trajectory& trajectory, int index) {
  if (trajectory.density || trajectory.states.empty()) {
    throw std::invalid_argument("accumulated_phase requires a pure-state trajectory");
  }
  const Complex first = trajectory.states.front()[index];
  const Complex last = trajectory.states.back()[index];
  if (std::abs(first) < 1e-6 || std::abs(last) < 1e-6) {
    throw PropagationError("accumulated_phase: endpoint amplitude below 1e-6");
  }
  PhaseResult result;
  result.min_amplitude = std::abs(first);
  double phase = 0.0;
  Complex prev = first;
  for (std::size_t i = 1; i < trajectory.states.size(); ++i) {
    const Complex cur = trajectory.states[i][index];
    result.min_amplitude = std::min(result.min_amplitude, std::abs(cur));
    if (std::abs(cur) > 0.0) {
      phase += std::arg(cur / prev);
      prev = cur;
    }
  }
  result.phase = phase;
  result.continuous = result.min_amplitude >= 1e-3;
  return result;
}

double wrap_angle(double radians) {
  double w = std::remainder(radians, 2.0 * M_PI);
  if (w <= -M_PI) w += 2.0 * M_PI;
  return w;
}

}  // namespace rydcz
