// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "rsvlc/camera.hpp"
#include "rsvlc/channel.hpp"

namespace rsvlc {

/// A parsed scene file.
///
///     # comment
///     rows = 512
///     cols = 1024
///     row_period = 1.25e-5
///     pixel_pitch = 0.25
///     origin = center          (or "u,v" in mm)
///     noise_sigma = 0
///     seed = 7
///     period = 1e-4
///     ambient = 0              (radiance units, C1 / mm^2)
///     t0 = 3.1e-4              (optional capture time)
///     led: x=-25 y=0 h=100 m=1 c1=1 payload=0x4d
///
/// LED parity follows the order of the `led:` lines. Unset keys keep the
/// CameraConfig defaults; `origin` defaults to centred.
struct SceneSpec {
  CameraConfig camera;
  double period = 1e-4;
  AmbientModel ambient;
  std::optional<double> t0;
  std::vector<LedSource> leds;

  double pixels_per_bit() const noexcept { return camera.pixels_per_bit(period); }
  double capture_time() const;
  std::vector<std::uint8_t> payloads() const;
};

/// Throws ParseError naming the offending line.
SceneSpec parse_scene(std::istream& in);
SceneSpec parse_scene(std::string_view text);
SceneSpec load_scene(const std::filesystem::path& path);

/// Module invariants plus the scene-level rules: OddLedCount for an odd or
/// zero LED count, RegionTooShort when the frame holds fewer than 28 T_d
/// rows.
void validate(const SceneSpec& scene);

FrameImage render(const SceneSpec& scene);

}  // namespace rsvlc
