// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

// All frequencies inside the library are angular (rad/us); times are us.
// Configuration files carry explicit unit tags so dimensional quantities
// are never bare numbers.  Supported tags:
//
//   angular frequency:  MHz_over_2pi, GHz_over_2pi, kHz_over_2pi, rad_per_us
//   time:               us, ns, ms
//   rate:               per_us, per_ms
//   angle:              rad
//
// "20 MHz_over_2pi" means omega/(2*pi) = 20 MHz, i.e. omega = 2*pi*20 rad/us.

namespace rydcz::units {

inline constexpr double two_pi = 6.283185307179586476925286766559;

// Each parser takes "<number> <unit>" and returns the internal value.
// Throws std::invalid_argument with the offending text on bad input.
double angular_frequency(std::string_view text);  // -> rad/us
double time_us(std::string_view text);            // -> us
double rate_per_us(std::string_view text);        // -> 1/us
double angle_rad(std::string_view text);          // -> rad

// Formatting for config echoes and reports.
std::string format_angular(double rad_per_us);  // "x MHz_over_2pi"
std::string format_time(double us);             // "x us"
std::string format_rate(double per_us);         // "x per_us"
std::string format_angle(double rad);           // "x rad"

}  // namespace rydcz::units
