// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rydcz/gate.hpp"

// Parameter scans over the gate protocols and a bounded derivative-free
// optimizer for local pulse tuning.

namespace rydcz {

enum class Observable { bell_fidelity, bell_infidelity, phi01, cz_phase_defect };

std::string_view to_string(Observable o);
Observable observable_from_string(std::string_view name);

// Registry of sweepable/optimizable parameters addressed by path, e.g.
// "pulse.omega_max", "blockade", "two_photon.detuning", "three_photon.omega2".
enum class ParameterUnit { angular, time, angle };
void apply_parameter(ProtocolConfig& config, const std::string& path, double value);
ParameterUnit parameter_unit(const std::string& path);
const std::vector<std::string>& known_parameters();

struct SweepAxis {
  std::string parameter;
  std::vector<double> values;  // internal units
};

struct SweepSpec {
  std::vector<SweepAxis> axes;  // >= 1 axis; row order is lexicographic
  ProtocolConfig base;
  Observable observable = Observable::bell_infidelity;
  int jobs = 0;  // 0 = hardware concurrency
};

struct SweepPoint {
  std::vector<double> coordinates;
  double value = 0.0;
  std::string error;  // empty on success; failed points are kept, not dropped
};

struct SweepResult {
  std::vector<std::string> parameters;
  Observable observable = Observable::bell_infidelity;
  std::vector<SweepPoint> points;
};

// Evaluates the observable at every grid point.  Points are independent work
// items over a bounded pool; results are ordered by grid index, so parallel
// and sequential execution produce identical tables.
SweepResult run_sweep(const SweepSpec& spec);

// Single-point observable evaluation (sweeps and the optimizer delegate here).
double evaluate_observable(const ProtocolConfig& config, Observable observable);

struct OptimizerParameter {
  std::string path;
  double initial = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double step = 0.0;  // initial simplex displacement
};

struct OptimizerSpec {
  std::vector<OptimizerParameter> parameters;
  ProtocolConfig base;
  Observable objective = Observable::bell_infidelity;
  int max_evaluations = 200;
  double tolerance = 1e-10;  // convergence on simplex objective spread
};

struct OptimizeResult {
  std::vector<double> best;
  double best_value = 0.0;
  int evaluations = 0;
  bool converged = false;
  std::vector<std::pair<std::vector<double>, double>> trace;
};

// Nelder-Mead with proposals clipped to the declared bounds; deterministic
// for identical inputs (no randomized restarts).
OptimizeResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                           const std::vector<OptimizerParameter>& parameters,
                           int max_evaluations, double tolerance);

OptimizeResult optimize(const OptimizerSpec& spec);

}  // namespace rydcz
