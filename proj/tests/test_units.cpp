// Copyright (c) 2026 rydcz contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <stdexcept>

#include "rydcz/units.hpp"

using namespace rydcz;

TEST_SUITE("units") {

TEST_CASE("angular frequency tags") {
  CHECK(units::angular_frequency("20 MHz_over_2pi") ==
        doctest::Approx(units::two_pi * 20.0).epsilon(1e-15));
  CHECK(units::angular_frequency("-4 GHz_over_2pi") ==
        doctest::Approx(-units::two_pi * 4000.0).epsilon(1e-15));
  CHECK(units::angular_frequency("10 rad_per_us") == 10.0);
  CHECK(units::angular_frequency("2 kHz_over_2pi") ==
        doctest::Approx(units::two_pi * 0.002).epsilon(1e-15));
}

TEST_CASE("time and rate tags") {
  CHECK(units::time_us("0.05 us") == 0.05);
  CHECK(units::time_us("155 ns") == doctest::Approx(0.155).epsilon(1e-15));
  CHECK(units::rate_per_us("0.5 per_us") == 0.5);
  CHECK(units::angle_rad("3.90242 rad") == 3.90242);
}

TEST_CASE("bad input diagnostics") {
  CHECK_THROWS_WITH_AS(units::angular_frequency("20 MHz"),
                       doctest::Contains("MHz"), std::invalid_argument);
  CHECK_THROWS_AS(units::angular_frequency("20"), std::invalid_argument);
  CHECK_THROWS_AS(units::angular_frequency("fast"), std::invalid_argument);
  CHECK_THROWS_AS(units::time_us("1 us extra"), std::invalid_argument);
  CHECK_THROWS_AS(units::time_us("nan us"), std::invalid_argument);
}

TEST_CASE("formatting round trip") {
  const double omega = units::two_pi * 17.25;
  CHECK(units::angular_frequency(units::format_angular(omega)) ==
        doctest::Approx(omega).epsilon(1e-15));
  CHECK(units::time_us(units::format_time(0.429268)) == 0.429268);
}

}  // TEST_SUITE
