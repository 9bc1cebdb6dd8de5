// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include "rydcz/units.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rydcz::units {

namespace {

struct Parsed {
  double value;
  std::string unit;
};

Parsed split(std::string_view text) {
  std::string s(text);
  std::istringstream in(s);
  double value = 0.0;
  std::string unit;
  if (!(in >> value) || !(in >> unit)) {
    throw std::invalid_argument("expected '<number> <unit>', got: '" + s + "'");
  }
  std::string trailing;
  if (in >> trailing) {
    throw std::invalid_argument("trailing content after unit in: '" + s + "'");
  }
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite value in: '" + s + "'");
  }
  return {value, unit};
}

[[noreturn]] void bad_unit(const Parsed& p, const char* wanted) {
  throw std::invalid_argument("unknown " + std::string(wanted) + " unit '" + p.unit + "'");
}

}  // namespace

double angular_frequency(std::string_view text) {
  const Parsed p = split(text);
  if (p.unit == "MHz_over_2pi") return two_pi * p.value;
  if (p.unit == "GHz_over_2pi") return two_pi * 1e3 * p.value;
  if (p.unit == "kHz_over_2pi") return two_pi * 1e-3 * p.value;
  if (p.unit == "rad_per_us") return p.value;
  bad_unit(p, "angular-frequency");
}

double time_us(std::string_view text) {
  const Parsed p = split(text);
  if (p.unit == "us") return p.value;
  if (p.unit == "ns") return 1e-3 * p.value;
  if (p.unit == "ms") return 1e3 * p.value;
  bad_unit(p, "time");
}

double rate_per_us(std::string_view text) {
  const Parsed p = split(text);
  if (p.unit == "per_us") return p.value;
  if (p.unit == "per_ms") return 1e-3 * p.value;
  bad_unit(p, "rate");
}

double angle_rad(std::string_view text) {
  const Parsed p = split(text);
  if (p.unit == "rad") return p.value;
  bad_unit(p, "angle");
}

namespace {

std::string num(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

std::string format_angular(double rad_per_us) {
  return num(rad_per_us / two_pi) + " MHz_over_2pi";
}

std::string format_time(double us) { return num(us) + " us"; }

std::string format_rate(double per_us) { return num(per_us) + " per_us"; }

std::string format_angle(double rad) { return num(rad) + " rad"; }

}  // namespace rydcz::units
