// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include "rydcz/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace rydcz {

std::string_view to_string(Observable o) {
  switch (o) {
    case Observable::bell_fidelity: return "bell_fidelity";
    case Observable::bell_infidelity: return "bell_infidelity";
    case Observable::phi01: return "phi01";
    case Observable::cz_phase_defect: return "cz_phase_defect";
  }
  throw std::logic_error("bad Observable");
}

Observable observable_from_string(std::string_view name) {
  if (name == "bell_fidelity") return Observable::bell_fidelity;
  if (name == "bell_infidelity") return Observable::bell_infidelity;
  if (name == "phi01") return Observable::phi01;
  if (name == "cz_phase_defect") return Observable::cz_phase_defect;
  throw std::invalid_argument("unknown observable '" + std::string(name) + "'");
}

namespace {

struct ParameterEntry {
  ParameterUnit unit;
  void (*apply)(ProtocolConfig&, double);
};

const std::vector<std::pair<std::string, ParameterEntry>>& parameter_table() {
  static const std::vector<std::pair<std::string, ParameterEntry>> table = {
      {"pulse.omega_max",
       {ParameterUnit::angular, [](ProtocolConfig& c, double v) { c.omega_max = v; }}},
      {"pulse.delta0",
       {ParameterUnit::angular, [](ProtocolConfig& c, double v) { c.delta0 = v; }}},
      {"pulse.duration",
       {ParameterUnit::time, [](ProtocolConfig& c, double v) { c.duration = v; }}},
      {"blockade",
       {ParameterUnit::angular,
        [](ProtocolConfig& c, double v) { c.blockade = Blockade::finite(v); }}},
      {"two_photon.detuning",
       {ParameterUnit::angular,
        [](ProtocolConfig& c, double v) { c.two_photon_detuning = v; }}},
      {"three_photon.omega2",
       {ParameterUnit::angular, [](ProtocolConfig& c, double v) { c.omega2 = v; }}},
      {"three_photon.omega3",
       {ParameterUnit::angular, [](ProtocolConfig& c, double v) { c.omega3 = v; }}},
      {"phase_jump.detuning",
       {ParameterUnit::angular,
        [](ProtocolConfig& c, double v) { c.phase_jump.detuning = v; }}},
      {"phase_jump.delta_psi",
       {ParameterUnit::angle,
        [](ProtocolConfig& c, double v) { c.phase_jump.delta_psi = v; }}},
      {"phase_jump.half_time",
       {ParameterUnit::time,
        [](ProtocolConfig& c, double v) { c.phase_jump.half_time = v; }}},
  };
  return table;
}

const ParameterEntry& lookup(const std::string& path) {
  for (const auto& [name, entry] : parameter_table()) {
    if (name == path) return entry;
  }
  throw std::invalid_argument("unknown parameter path '" + path + "'");
}

}  // namespace

void apply_parameter(ProtocolConfig& config, const std::string& path, double value) {
  lookup(path).apply(config, value);
}

ParameterUnit parameter_unit(const std::string& path) { return lookup(path).unit; }

const std::vector<std::string>& known_parameters() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, entry] : parameter_table()) out.push_back(name);
    return out;
  }();
  return names;
}

double evaluate_observable(const ProtocolConfig& config, Observable observable) {
  switch (observable) {
    case Observable::bell_fidelity:
      return prepare_bell(config).fidelity;
    case Observable::bell_infidelity:
      return 1.0 - prepare_bell(config).fidelity;
    case Observable::phi01: {
      ProtocolConfig pure = config;
      pure.decay.clear();
      GateRun run = run_cz(pure);
      return run.phi01;
    }
    case Observable::cz_phase_defect: {
      ProtocolConfig pure = config;
      pure.decay.clear();
      GateRun run = run_cz(pure);
      return M_PI - std::abs(wrap_angle(2.0 * run.phi01 - run.phi11));
    }
  }
  throw std::logic_error("bad Observable");
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.axes.empty()) throw std::invalid_argument("sweep needs at least one axis");
  std::size_t total = 1;
  for (const SweepAxis& axis : spec.axes) {
    if (axis.values.empty()) {
      throw std::invalid_argument("sweep axis '" + axis.parameter + "' has no values");
    }
    for (double v : axis.values) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("sweep axis '" + axis.parameter +
                                    "' has a non-finite value");
      }
    }
    total *= axis.values.size();
  }

  SweepResult result;
  result.observable = spec.observable;
  for (const SweepAxis& axis : spec.axes) result.parameters.push_back(axis.parameter);
  result.points.resize(total);

  const auto evaluate_point = [&](std::size_t flat) {
    SweepPoint& point = result.points[flat];
    point.coordinates.resize(spec.axes.size());
    ProtocolConfig config = spec.base;
    config.jobs = 1;  // parallelism lives at the grid level
    std::size_t rest = flat;
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const SweepAxis& axis = spec.axes[a];
      const std::size_t i = rest % axis.values.size();
      rest /= axis.values.size();
      point.coordinates[a] = axis.values[i];
      apply_parameter(config, axis.parameter, axis.values[i]);
    }
    try {
      point.value = evaluate_observable(config, spec.observable);
    } catch (const std::exception& err) {
      point.value = std::nan("");
      point.error = err.what();
    }
  };

  unsigned workers = spec.jobs > 0 ? static_cast<unsigned>(spec.jobs)
                                   : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, total);
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) evaluate_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= total) return;
          evaluate_point(i);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return result;
}

OptimizeResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& fn,
    const std::vector<OptimizerParameter>& parameters, int max_evaluations,
    double tolerance) {
  const std::size_t n = parameters.size();
  if (n == 0) throw std::invalid_argument("optimizer needs at least one parameter");
  for (const OptimizerParameter& p : parameters) {
    if (!std::isfinite(p.lower) || !std::isfinite(p.upper) || p.lower >= p.upper) {
      throw std::invalid_argument("parameter '" + p.path + "' needs finite bounds");
    }
    if (p.initial < p.lower || p.initial > p.upper) {
      throw std::invalid_argument("parameter '" + p.path + "' starts outside bounds");
    }
  }

  OptimizeResult result;
  const auto clip = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = std::clamp(x[i], parameters[i].lower, parameters[i].upper);
    }
  };
  const auto eval = [&](const std::vector<double>& x) {
    result.trace.emplace_back(x, 0.0);
    const double f = fn(x);
    result.trace.back().second = f;
    ++result.evaluations;
    return f;
  };

  std::vector<std::vector<double>> simplex;
  std::vector<double> values;
  std::vector<double> x0(n);
  for (std::size_t i = 0; i < n; ++i) x0[i] = parameters[i].initial;
  simplex.push_back(x0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = x0;
    const double step = parameters[i].step != 0.0
                            ? parameters[i].step
                            : 0.1 * (parameters[i].upper - parameters[i].lower);
    x[i] += step;
    if (x[i] > parameters[i].upper) x[i] = x0[i] - step;
    clip(x);
    simplex.push_back(x);
  }
  for (const auto& x : simplex) values.push_back(eval(x));

  constexpr double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  while (result.evaluations < max_evaluations) {
    std::vector<std::size_t> order(simplex.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    {
      std::vector<std::vector<double>> s2;
      std::vector<double> v2;
      for (std::size_t i : order) {
        s2.push_back(simplex[i]);
        v2.push_back(values[i]);
      }
      simplex.swap(s2);
      values.swap(v2);
    }
    if (values.back() - values.front() < tolerance) {
      result.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i + 1 < simplex.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    const auto combine = [&](double coeff) {
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) {
        x[j] = centroid[j] + coeff * (centroid[j] - simplex.back()[j]);
      }
      clip(x);
      return x;
    };

    std::vector<double> reflected = combine(alpha);
    const double fr = eval(reflected);
    if (fr < values.front()) {
      std::vector<double> expanded = combine(alpha * gamma);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex.back() = expanded;
        values.back() = fe;
      } else {
        simplex.back() = reflected;
        values.back() = fr;
      }
    } else if (fr < values[values.size() - 2]) {
      simplex.back() = reflected;
      values.back() = fr;
    } else {
      std::vector<double> contracted = combine(-rho);
      const double fc = eval(contracted);
      if (fc < values.back()) {
        simplex.back() = contracted;
        values.back() = fc;
      } else {
        for (std::size_t i = 1; i < simplex.size(); ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            simplex[i][j] =
                simplex[0][j] + sigma * (simplex[i][j] - simplex[0][j]);
          }
          clip(simplex[i]);
          values[i] = eval(simplex[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  result.best = simplex[best];
  result.best_value = values[best];
  return result;
}

OptimizeResult optimize(const OptimizerSpec& spec) {
  const auto objective = [&](const std::vector<double>& x) {
    ProtocolConfig config = spec.base;
    for (std::size_t i = 0; i < spec.parameters.size(); ++i) {
      apply_parameter(config, spec.parameters[i].path, x[i]);
    }
    return evaluate_observable(config, spec.objective);
  };
  return nelder_mead(objective, spec.parameters, spec.max_evaluations,
                     spec.tolerance);
}

}  // namespace rydcz
