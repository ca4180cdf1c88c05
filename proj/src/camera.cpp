// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/camera.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "rsvlc/error.hpp"

namespace rsvlc {

FrameImage::FrameImage(Eigen::Index rows, Eigen::Index cols, double fill)
    : pixels_(ImageArray<double>::Constant(rows, cols, std::clamp(fill, 0.0, 1.0))) {}

FrameImage::FrameImage(ImageArray<double> pixels) : pixels_(std::move(pixels)) {
  pixels_ = pixels_.isFinite().select(pixels_, 0.0).max(0.0).min(1.0);
}

FrameImage FrameImage::crop_rows(Eigen::Index first, Eigen::Index count) const {
  if (first < 0 || count < 0 || first + count > rows()) {
    throw Error(ErrorKind::OutOfRange, "row crop outside image");
  }
  return FrameImage(ImageArray<double>(pixels_.middleRows(first, count)));
}

void validate(const CameraConfig& cfg) {
  if (cfg.rows < 1 || cfg.cols < 1) {
    throw Error(ErrorKind::ConfigError, "camera needs at least one row and column");
  }
  if (!(cfg.row_period > 0.0)) throw Error(ErrorKind::ConfigError, "row period Ts must be > 0");
  if (!(cfg.pixel_pitch > 0.0)) throw Error(ErrorKind::ConfigError, "pixel pitch must be > 0");
  if (!(cfg.noise_sigma >= 0.0)) throw Error(ErrorKind::ConfigError, "noise sigma must be >= 0");
  if (!std::isfinite(cfg.origin.u) || !std::isfinite(cfg.origin.v)) {
    throw Error(ErrorKind::ConfigError, "camera origin must be finite");
  }
}

SurfacePoint centered_origin(Eigen::Index rows, Eigen::Index cols, double pitch) {
  return {-0.5 * static_cast<double>(cols - 1) * pitch,
          -0.5 * static_cast<double>(rows - 1) * pitch};
}

SurfacePoint point(Eigen::Index r, Eigen::Index c, const CameraConfig& cfg) {
  if (r < 0 || r >= cfg.rows || c < 0 || c >= cfg.cols) {
    throw Error(ErrorKind::OutOfRange, "pixel (" + std::to_string(r) + ", " +
                                           std::to_string(c) + ") outside frame");
  }
  return {cfg.origin.u + static_cast<double>(c) * cfg.pixel_pitch,
          cfg.origin.v + static_cast<double>(r) * cfg.pixel_pitch};
}

double default_capture_time(std::span<const LedSource> leds, const CameraConfig& cfg) {
  if (leds.empty()) throw Error(ErrorKind::ConfigError, "scene has no LEDs");
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32), 0x7430u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> phase(0.0, static_cast<double>(kFrameBits) *
                                                        leds.front().period);
  return phase(rng);
}

FrameImage render(std::span<const LedSource> leds, const AmbientModel& ambient,
                  const CameraConfig& cfg, double t0) {
  validate(cfg);
  validate(ambient);
  if (leds.empty()) throw Error(ErrorKind::ConfigError, "scene has no LEDs");
  for (const auto& led : leds) {
    validate(led);
    if (cfg.pixels_per_bit(led.period) < 4.0) {
      throw Error(ErrorKind::ConfigError,
                  "T/Ts = " + std::to_string(cfg.pixels_per_bit(led.period)) +
                      " pixels per bit; the decoder needs at least 4");
    }
  }

  const Eigen::Index rows = cfg.rows;
  const Eigen::Index cols = cfg.cols;
  const Eigen::RowVectorXd u_line = Eigen::RowVectorXd::LinSpaced(
      cols, cfg.origin.u, cfg.origin.u + static_cast<double>(cols - 1) * cfg.pixel_pitch);
  const Eigen::VectorXd v_line = Eigen::VectorXd::LinSpaced(
      rows, cfg.origin.v, cfg.origin.v + static_cast<double>(rows - 1) * cfg.pixel_pitch);
  const ImageArray<double> u = u_line.replicate(rows, 1).array();
  const ImageArray<double> v = v_line.replicate(1, cols).array();

  std::vector<ImageArray<double>> fields;
  fields.reserve(leds.size());
  ImageArray<double> peak = ImageArray<double>::Constant(rows, cols, ambient.level);
  for (const auto& led : leds) {
    fields.push_back(radiance_field(led, u, v));
    peak += fields.back();
  }
  const double scale = 1.0 / peak.maxCoeff();

  std::vector<Waveform> waves;
  waves.reserve(leds.size());
  for (const auto& led : leds) waves.emplace_back(led.frame, led.period);

  ImageArray<double> img = ImageArray<double>::Constant(rows, cols, ambient.level);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double t = t0 + static_cast<double>(r) * cfg.row_period;
    for (std::size_t i = 0; i < leds.size(); ++i) {
      if (waves[i](t)) img.row(r) += fields[i].row(r);
    }
  }
  img *= scale;

  if (cfg.noise_sigma > 0.0) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> noise(0.0, cfg.noise_sigma);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) img(r, c) += noise(rng);
    }
  }
  return FrameImage(std::move(img));
}

FrameImage render(std::span<const LedSource> leds, const AmbientModel& ambient,
                  const CameraConfig& cfg) {
  return render(leds, ambient, cfg, default_capture_time(leds, cfg));
}

}  // namespace rsvlc
