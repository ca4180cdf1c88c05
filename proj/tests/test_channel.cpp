// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "rsvlc/channel.hpp"
#include "rsvlc/error.hpp"

using namespace rsvlc;

namespace {

// Lambertian radiance written with an explicit angle.
double angle_oracle(double c1, double h, double m, double dx, double dy) {
  const double d = std::sqrt(h * h + dx * dx + dy * dy);
  const double theta = std::acos(h / d);
  return c1 / (d * d) * std::pow(std::cos(theta), m + 1.0);
}

}  // namespace

TEST_CASE("radiance on axis and off axis") {
  CHECK(radiance(2.0, 10.0, 0.0, 0.0) == doctest::Approx(2.0 / 100.0));
  // d^2 = 2 h^2: h^2 / d^4 = 1 / (4 h^2).
  CHECK(radiance(1.0, 10.0, 10.0, 0.0) == doctest::Approx(1.0 / 400.0));
  CHECK(radiance(1.0, 10.0, 0.0, -10.0) == doctest::Approx(1.0 / 400.0));
}

TEST_CASE("general order agrees with the angle form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  std::uniform_real_distribution<double> hh(5.0, 300.0);
  std::uniform_real_distribution<double> mm(0.0, 20.0);
  for (int i = 0; i < 500; ++i) {
    const double h = hh(rng);
    const double m = mm(rng);
    const double dx = u(rng);
    const double dy = u(rng);
    const double want = angle_oracle(1.5, h, m, dx, dy);
    CHECK(radiance_general(1.5, h, m, dx, dy) == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("m = 1 collapses to the closed form") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  for (int i = 0; i < 1000; ++i) {
    const double h = std::abs(u(rng)) + 1.0;
    const double dx = u(rng);
    const double dy = u(rng);
    const double a = radiance(3.0, h, dx, dy);
    const double b = radiance_general(3.0, h, 1.0, dx, dy);
    CHECK(std::abs(a - b) <= 1e-12 * a);
  }
}

TEST_CASE("m = 0 is a pure 1/d^3 falloff times h") {
  const double h = 40.0;
  const double dx = 30.0;
  const double d = 50.0;
  CHECK(radiance_general(1.0, h, 0.0, dx, 0.0) == doctest::Approx(h / (d * d * d)));
}

TEST_CASE("scalar templates work in float") {
  const float a = radiance<float>(1.0f, 10.0f, 3.0f, 4.0f);
  CHECK(a == doctest::Approx(radiance(1.0, 10.0, 3.0, 4.0)).epsilon(1e-6));
}

TEST_CASE("radiance field matches the scalar function") {
  LedSource led;
  led.x = 5.0;
  led.y = -3.0;
  led.h = 20.0;
  led.m = 2.0;
  led.c1 = 0.7;
  Eigen::ArrayXXd u(3, 4);
  Eigen::ArrayXXd v(3, 4);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 4; ++c) {
      u(r, c) = -10.0 + 7.0 * c;
      v(r, c) = -8.0 + 5.0 * r;
    }
  }
  const Eigen::ArrayXXd field = radiance_field(led, u, v);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(field(r, c) == doctest::Approx(radiance_general(led, {u(r, c), v(r, c)})));
    }
  }
}

TEST_CASE("composite intensity") {
  std::array<LedSource, 2> leds;
  leds[0].x = -10.0;
  leds[1].x = 10.0;
  leds[0].frame = encode_frame(0x00, Parity::Even);
  leds[1].frame = encode_frame(0x00, Parity::Odd);
  const AmbientModel ambient{0.125};
  const double T = leds[0].period;
  const SurfacePoint mid{0.0, 0.0};
  const double r = radiance_general(leds[0], mid);

  SUBCASE("complementary preambles give a flat midpoint") {
    for (std::size_t k = 0; k < kFrameBits; ++k) {
      const double t = (static_cast<double>(k) + 0.5) * T;
      const double got = composite_intensity(leds, mid, t, ambient);
      if (k < 24 && k % 3 == 2) {
        CHECK(got == doctest::Approx(ambient.level));  // both data bits are 0
      } else {
        CHECK(got == doctest::Approx(r + ambient.level));
      }
    }
  }
  SUBCASE("single LED on") {
    const std::array<LedSource, 1> one{leds[0]};
    const SurfacePoint p{3.0, 4.0};
    CHECK(composite_intensity(one, p, 0.5 * T, ambient) ==
          doctest::Approx(radiance_general(leds[0], p) + ambient.level));
    CHECK(composite_intensity(one, p, 1.5 * T, ambient) == doctest::Approx(ambient.level));
  }
  SUBCASE("Lambertian order is honoured") {
    std::array<LedSource, 1> one{leds[0]};
    one[0].m = 4.0;
    const SurfacePoint p{25.0, 0.0};
    CHECK(composite_intensity(one, p, 0.5 * T, AmbientModel{}) ==
          doctest::Approx(radiance_general(one[0], p)));
  }
  CHECK_THROWS_AS(composite_intensity(std::span<const LedSource>{}, mid, 0.0, ambient), Error);
}

TEST_CASE("validation") {
  auto bad = [](auto mutate) {
    LedSource led;
    mutate(led);
    try {
      validate(led);
    } catch (const Error& e) {
      return e.kind() == ErrorKind::ConfigError;
    }
    return false;
  };
  CHECK(bad([](LedSource& l) { l.h = 0.0; }));
  CHECK(bad([](LedSource& l) { l.m = -0.5; }));
  CHECK(bad([](LedSource& l) { l.c1 = 0.0; }));
  CHECK(bad([](LedSource& l) { l.period = 0.0; }));
  CHECK(bad([](LedSource& l) { l.x = std::nan(""); }));
  CHECK_NOTHROW(validate(LedSource{}));
  CHECK_THROWS_AS(validate(AmbientModel{-1.0}), Error);
  CHECK_NOTHROW(validate(AmbientModel{0.0}));
}
