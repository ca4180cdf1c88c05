// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rsvlc {

enum class Regime : std::uint8_t { PointSource, Separable, LowEnergyInterference };

std::string_view to_string(Regime r) noexcept;

/// Two-LED simulator settings for the geometry study. The field of view is
/// d_xy + fov_margin * h wide, centred between the LEDs, so results depend
/// on h / d_xy only.
struct SimParams {
  Eigen::Index rows = 512;
  Eigen::Index cols = 1024;
  double pixels_per_bit = 8.0;
  double period = 1e-4;
  double m = 1.0;
  double c1 = 1.0;
  double fov_margin = 6.0;
  double lit_threshold = 0.1;
  Eigen::Index smooth_width = 0;  // 0 selects default_smoothing
  int draws = 12;                 // payload/phase draws averaged per point
  std::uint64_t seed = 0;
};

void validate(const SimParams& params);

struct GeometrySweepPoint {
  double h = 0.0;
  double d_xy = 0.0;
  double ratio = 0.0;  // h / d_xy, infinite for coincident LEDs
  bool has_minimum = false;
  double E_min = 1.0;
  double E_c = 1.0;
  double energy_ratio = 1.0;
  double L_t = 0.0;
  double L_i = 0.0;
  double area_ratio = 0.0;  // infinite when no transmission span exists
  Eigen::Index center_col = -1;
  double midpoint_col = 0.0;
  Regime regime = Regime::PointSource;
};

/// Below this minimum the dip counts as an interference centre.
inline constexpr double kPointSourceLevel = 0.95;
/// Above this interference/transmission length ratio the scene is in the
/// wide, low-energy interference regime.
inline constexpr double kLowEnergyAreaRatio = 1.6;

Regime classify_regime(const GeometrySweepPoint& point);

/// Interior minimum of a normalised profile between the highest value left
/// of centre and the highest value right of it, with the E_c = (1 + E_min)/2
/// split into interference and transmission lengths. Fills every field
/// except h, d_xy, ratio, midpoint_col and regime.
GeometrySweepPoint measure_profile(const Eigen::ArrayXd& values, Eigen::Index first_col);

/// Renders `params.draws` noiseless two-LED frames with random payloads and
/// capture phases, averages their mean-window energy columns and measures
/// the resulting profile. Throws ConfigError for h <= 0 or d_xy < 0.
GeometrySweepPoint sweep_point(double h, double d_xy, const SimParams& params);

/// sweep_point over the Cartesian product, h-major. Throws ConfigError on an
/// empty grid.
std::vector<GeometrySweepPoint> sweep_grid(std::span<const double> h_values,
                                           std::span<const double> d_values,
                                           const SimParams& params);

/// Counts indexed by Regime.
std::array<std::size_t, 3> regime_counts(std::span<const GeometrySweepPoint> points);

/// CSV "h,d_xy,ratio,E_min,energy_ratio,L_t,L_i,area_ratio,regime".
void write_sweep_csv(std::ostream& out, std::span<const GeometrySweepPoint> points);

}  // namespace rsvlc
