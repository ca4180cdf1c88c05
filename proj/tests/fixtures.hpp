// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "rsvlc/protocol.hpp"
#include "rsvlc/scene.hpp"

namespace rsvlc::testing {

struct Bench {
  Eigen::Index rows = 512;
  Eigen::Index cols = 1024;
  double pitch = 0.25;
  double pixels_per_bit = 8.0;
  double period = 1e-4;
  double h = 100.0;
  double m = 1.0;
  double noise = 0.0;
  double ambient = 0.0;
  std::uint64_t seed = 0;
};

/// LEDs at the given x positions, carrying `payloads` with alternating parity
/// from the left.
inline SceneSpec bench_scene(const Bench& b, const std::vector<double>& xs,
                             const std::vector<std::uint8_t>& payloads) {
  SceneSpec s;
  s.period = b.period;
  s.camera.rows = b.rows;
  s.camera.cols = b.cols;
  s.camera.pixel_pitch = b.pitch;
  s.camera.row_period = b.period / b.pixels_per_bit;
  s.camera.origin = centered_origin(b.rows, b.cols, b.pitch);
  s.camera.noise_sigma = b.noise;
  s.camera.seed = b.seed;
  s.ambient.level = b.ambient;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    LedSource led;
    led.x = xs[i];
    led.h = b.h;
    led.m = b.m;
    led.period = b.period;
    led.frame = encode_frame(payloads[i], parity_of(i));
    s.leds.push_back(led);
  }
  return s;
}

inline SceneSpec pair_scene(const Bench& b, double d, std::uint8_t left, std::uint8_t right) {
  return bench_scene(b, {-d / 2, d / 2}, {left, right});
}

/// Four LEDs 140 mm apart at h = 100 on a half-millimetre grid.
inline SceneSpec quad_scene(std::uint64_t seed, double noise,
                            const std::vector<std::uint8_t>& payloads) {
  Bench b;
  b.rows = 768;
  b.pitch = 0.5;
  b.noise = noise;
  b.seed = seed;
  return bench_scene(b, {-210.0, -70.0, 70.0, 210.0}, payloads);
}

}  // namespace rsvlc::testing
