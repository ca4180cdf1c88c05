// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "rsvlc/camera.hpp"
#include "rsvlc/detector.hpp"
#include "rsvlc/error.hpp"
#include "rsvlc/signal.hpp"

namespace rsvlc {

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::PointSource: return "PointSource";
    case Regime::Separable: return "Separable";
    case Regime::LowEnergyInterference: return "LowEnergyInterference";
  }
  return "?";
}

void validate(const SimParams& p) {
  if (p.rows < 1 || p.cols < 1) throw Error(ErrorKind::ConfigError, "frame must be non-empty");
  if (!(p.pixels_per_bit >= 4.0)) throw Error(ErrorKind::ConfigError, "T_d must be >= 4");
  if (!(p.period > 0.0)) throw Error(ErrorKind::ConfigError, "period must be > 0");
  if (!(p.m >= 0.0) || !(p.c1 > 0.0)) throw Error(ErrorKind::ConfigError, "need m >= 0, c1 > 0");
  if (!(p.fov_margin > 0.0)) throw Error(ErrorKind::ConfigError, "fov_margin must be > 0");
  if (!(p.lit_threshold > 0.0 && p.lit_threshold < 1.0)) {
    throw Error(ErrorKind::ConfigError, "lit_threshold must lie in (0, 1)");
  }
  if (p.draws < 1) throw Error(ErrorKind::ConfigError, "draws must be >= 1");
}

Regime classify_regime(const GeometrySweepPoint& point) {
  if (!point.has_minimum || point.E_min >= kPointSourceLevel) return Regime::PointSource;
  if (point.area_ratio > kLowEnergyAreaRatio) return Regime::LowEnergyInterference;
  return Regime::Separable;
}

GeometrySweepPoint measure_profile(const Eigen::ArrayXd& values, Eigen::Index first_col) {
  GeometrySweepPoint pt;
  const Eigen::Index n = values.size();
  pt.L_i = static_cast<double>(n);
  pt.area_ratio = std::numeric_limits<double>::infinity();
  if (n < 3) return pt;

  const Eigen::Index mid = n / 2;
  Eigen::Index left = 0;
  Eigen::Index right = 0;
  values.head(mid).maxCoeff(&left);
  values.tail(n - mid).maxCoeff(&right);
  right += mid;
  Eigen::Index j = 0;
  const double low = values.segment(left, right - left + 1).minCoeff(&j);
  const Eigen::Index c = left + j;
  if (c == left || c == right || !(low < values(left) && low < values(right))) return pt;

  pt.has_minimum = true;
  pt.E_min = std::clamp(low, 0.0, 1.0);
  pt.E_c = (1.0 + pt.E_min) / 2.0;
  pt.energy_ratio = pt.E_min > 0.0 ? 1.0 / pt.E_min : std::numeric_limits<double>::infinity();
  pt.center_col = first_col + c;

  Eigen::Index a = c;
  while (a > 0 && values(a - 1) < pt.E_c) --a;
  Eigen::Index b = c;
  while (b < n - 1 && values(b + 1) < pt.E_c) ++b;
  pt.L_i = static_cast<double>(b - a + 1);

  Eigen::Index left_span = 0;
  for (Eigen::Index k = a - 1; k >= 0 && values(k) >= pt.E_c; --k) ++left_span;
  Eigen::Index right_span = 0;
  for (Eigen::Index k = b + 1; k < n && values(k) >= pt.E_c; ++k) ++right_span;
  pt.L_t = static_cast<double>(left_span + right_span) / 2.0;
  pt.area_ratio =
      pt.L_t > 0.0 ? pt.L_i / pt.L_t : std::numeric_limits<double>::infinity();
  return pt;
}

namespace {

// Bounding box of every lit component, so that sources imaged as separate
// blobs still share one profile.
LitArea lit_hull(const FrameImage& img, const SimParams& p) {
  const auto min_area =
      static_cast<std::size_t>(std::ceil(9.0 * p.pixels_per_bit * p.pixels_per_bit));
  const auto areas = find_lit_areas(img, p.pixels_per_bit, p.lit_threshold, min_area);
  LitArea hull = areas.front();
  for (const LitArea& a : areas) {
    hull.row_min = std::min(hull.row_min, a.row_min);
    hull.row_max = std::max(hull.row_max, a.row_max);
    hull.col_min = std::min(hull.col_min, a.col_min);
    hull.col_max = std::max(hull.col_max, a.col_max);
  }
  hull.mask.setConstant(hull.row_span(), hull.col_span(), true);
  hull.pixel_count = static_cast<std::size_t>(hull.mask.size());
  return hull;
}

}  // namespace

GeometrySweepPoint sweep_point(double h, double d_xy, const SimParams& params) {
  validate(params);
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorKind::ConfigError, "h must be > 0");
  if (!(d_xy >= 0.0) || !std::isfinite(d_xy)) {
    throw Error(ErrorKind::ConfigError, "d_xy must be >= 0");
  }

  CameraConfig cam;
  cam.rows = params.rows;
  cam.cols = params.cols;
  cam.row_period = params.period / params.pixels_per_bit;
  cam.pixel_pitch = (d_xy + params.fov_margin * h) / static_cast<double>(params.cols);
  cam.origin = centered_origin(cam.rows, cam.cols, cam.pixel_pitch);

  std::array<LedSource, 2> leds;
  for (std::size_t i = 0; i < leds.size(); ++i) {
    leds[i].x = (i == 0 ? -0.5 : 0.5) * d_xy;
    leds[i].h = h;
    leds[i].m = params.m;
    leds[i].c1 = params.c1;
    leds[i].period = params.period;
  }

  // Every grid point sees the same payload and phase draws.
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_real_distribution<double> phase(0.0, static_cast<double>(kFrameBits) * params.period);

  LitArea area;
  Eigen::ArrayXd acc;
  for (int k = 0; k < params.draws; ++k) {
    for (std::size_t i = 0; i < leds.size(); ++i) {
      leds[i].frame = encode_frame(static_cast<std::uint8_t>(byte(rng)), parity_of(i));
    }
    const FrameImage img = render(leds, AmbientModel{}, cam, phase(rng));
    if (k == 0) {
      area = lit_hull(img, params);
      acc = Eigen::ArrayXd::Zero(area.col_span());
    }
    acc += column_energies(img, area, params.pixels_per_bit, WindowStatistic::Mean);
  }
  acc /= static_cast<double>(params.draws);

  const Eigen::Index smooth = params.smooth_width > 0
                                  ? params.smooth_width
                                  : default_smoothing(params.pixels_per_bit);
  const EnergyProfile profile = make_profile(acc, area.col_min, smooth);

  GeometrySweepPoint pt = measure_profile(profile.values, profile.first_col);
  pt.h = h;
  pt.d_xy = d_xy;
  pt.ratio = d_xy > 0.0 ? h / d_xy : std::numeric_limits<double>::infinity();
  pt.midpoint_col = -cam.origin.u / cam.pixel_pitch;
  pt.regime = classify_regime(pt);
  return pt;
}

std::vector<GeometrySweepPoint> sweep_grid(std::span<const double> h_values,
                                           std::span<const double> d_values,
                                           const SimParams& params) {
  if (h_values.empty() || d_values.empty()) {
    throw Error(ErrorKind::ConfigError, "sweep grid is empty");
  }
  std::vector<GeometrySweepPoint> out;
  out.reserve(h_values.size() * d_values.size());
  for (double h : h_values) {
    for (double d : d_values) out.push_back(sweep_point(h, d, params));
  }
  return out;
}

std::array<std::size_t, 3> regime_counts(std::span<const GeometrySweepPoint> points) {
  std::array<std::size_t, 3> counts{};
  for (const auto& p : points) ++counts[static_cast<std::size_t>(p.regime)];
  return counts;
}

void write_sweep_csv(std::ostream& out, std::span<const GeometrySweepPoint> points) {
  out << "h,d_xy,ratio,E_min,energy_ratio,L_t,L_i,area_ratio,regime\n";
  for (const auto& p : points) {
    out << format_number(p.h) << ',' << format_number(p.d_xy) << ',' << format_number(p.ratio)
        << ',' << format_number(p.E_min) << ',' << format_number(p.energy_ratio) << ','
        << format_number(p.L_t) << ',' << format_number(p.L_i) << ','
        << format_number(p.area_ratio) << ',' << to_string(p.regime) << '\n';
  }
}

}  // namespace rsvlc
