// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "rsvlc/channel.hpp"

namespace rsvlc {

template <typename Scalar>
using ImageArray =
    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Row-major grayscale frame with intensities in [0, 1]. Row r was exposed
/// at t0 + r * Ts; every pixel of a row shares that instant.
class FrameImage {
 public:
  FrameImage() = default;
  FrameImage(Eigen::Index rows, Eigen::Index cols, double fill = 0.0);

  /// Non-finite values become 0; everything is clamped to [0, 1].
  explicit FrameImage(ImageArray<double> pixels);

  Eigen::Index rows() const noexcept { return pixels_.rows(); }
  Eigen::Index cols() const noexcept { return pixels_.cols(); }
  bool empty() const noexcept { return pixels_.size() == 0; }

  double operator()(Eigen::Index r, Eigen::Index c) const { return pixels_(r, c); }
  const ImageArray<double>& pixels() const noexcept { return pixels_; }

  /// Rows [first, first + count) as a new image.
  FrameImage crop_rows(Eigen::Index first, Eigen::Index count) const;

  friend bool operator==(const FrameImage& a, const FrameImage& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           (a.pixels_ == b.pixels_).all();
  }

 private:
  ImageArray<double> pixels_;
};

struct CameraConfig {
  Eigen::Index rows = 512;
  Eigen::Index cols = 1024;
  double row_period = 1.25e-5;  // Ts, seconds per row
  double pixel_pitch = 0.25;    // mm of surface per pixel
  SurfacePoint origin{};        // surface point imaged by pixel (0, 0)
  double noise_sigma = 0.0;     // full-scale units
  std::uint64_t seed = 0;

  /// T_d = T / Ts.
  double pixels_per_bit(double period) const noexcept { return period / row_period; }
};

/// Throws ConfigError for rows/cols < 1, Ts <= 0, pitch <= 0 or sigma < 0.
void validate(const CameraConfig& cfg);

/// Origin that centres the field of view on the surface point (0, 0).
SurfacePoint centered_origin(Eigen::Index rows, Eigen::Index cols, double pitch);

/// Surface point imaged by pixel (r, c). Throws OutOfRange.
SurfacePoint point(Eigen::Index r, Eigen::Index c, const CameraConfig& cfg);

/// Uniform capture phase in [0, 28 T) drawn from `cfg.seed`, using the
/// first LED's period.
double default_capture_time(std::span<const LedSource> leds, const CameraConfig& cfg);

/// Rolling-shutter rendering of the lit surface. Intensities are divided by
/// the scene's peak noiseless intensity (all LEDs on plus ambient), then
/// white Gaussian noise of `cfg.noise_sigma` is added and the result is
/// clamped. Throws ConfigError for invalid inputs or T/Ts < 4.
FrameImage render(std::span<const LedSource> leds, const AmbientModel& ambient,
                  const CameraConfig& cfg, double t0);

FrameImage render(std::span<const LedSource> leds, const AmbientModel& ambient,
                  const CameraConfig& cfg);

}  // namespace rsvlc
