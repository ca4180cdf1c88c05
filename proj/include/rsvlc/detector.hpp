// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "rsvlc/camera.hpp"
#include "rsvlc/protocol.hpp"

namespace rsvlc {

/// Inclusive column interval.
struct ColumnRange {
  Eigen::Index first = 0;
  Eigen::Index last = -1;

  Eigen::Index width() const noexcept { return last - first + 1; }
  bool empty() const noexcept { return last < first; }
  bool contains(Eigen::Index c) const noexcept { return c >= first && c <= last; }

  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

/// A 4-connected bright component. Bounds are inclusive; `mask` is
/// box-local.
struct LitArea {
  Eigen::Index row_min = 0;
  Eigen::Index row_max = -1;
  Eigen::Index col_min = 0;
  Eigen::Index col_max = -1;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> mask;
  std::size_t pixel_count = 0;

  Eigen::Index row_span() const noexcept { return row_max - row_min + 1; }
  Eigen::Index col_span() const noexcept { return col_max - col_min + 1; }
  ColumnRange columns() const noexcept { return {col_min, col_max}; }

  /// Whole-frame area, handy for synthetic inputs.
  static LitArea whole(const FrameImage& img);
};

/// Separable Gaussian filter truncated at 3 sigma with replicated borders.
ImageArray<double> gaussian_blur(const ImageArray<double>& img, double sigma);

/// Blurs the frame (which fills in the modulation stripes), keeps pixels
/// above min + threshold * (max - min) of the blurred frame, and returns
/// 4-connected components with at least `min_area` pixels, largest first.
/// Throws NoLightSource when nothing survives.
std::vector<LitArea> find_lit_areas(const FrameImage& img, double blur_sigma,
                                    double threshold, std::size_t min_area);

/// Defaults tied to the symbol length: sigma = T_d, threshold 0.25 and
/// minimum area (3 T_d)^2.
std::vector<LitArea> find_lit_areas(const FrameImage& img, double pixels_per_bit);

/// How per-window energies of one column are reduced to a single value.
enum class WindowStatistic {
  /// Average over all windows.
  Mean,
  /// Quietest window. Picks up the cancelled end-marker stretch, which the
  /// data slots otherwise swamp when neighbouring LEDs send equal bits.
  Floor,
};

/// Window length used by the energy detector: ceil(3 T_d).
Eigen::Index energy_window(double pixels_per_bit);

/// DC-free energy of each consecutive, non-overlapping window of
/// `energy_window(T_d)` rows along column `col` of `area` (trailing partial
/// window dropped). Throws WindowTooLarge if the area is shorter than one
/// window.
Eigen::ArrayXd window_energies(const FrameImage& img, const LitArea& area,
                               Eigen::Index col, double pixels_per_bit);

double column_energy(const FrameImage& img, const LitArea& area, Eigen::Index col,
                     double pixels_per_bit,
                     WindowStatistic stat = WindowStatistic::Mean);

/// column_energy for every column of `area`, unsmoothed and unnormalised.
Eigen::ArrayXd column_energies(const FrameImage& img, const LitArea& area,
                               double pixels_per_bit,
                               WindowStatistic stat = WindowStatistic::Mean);

/// Per-column high-frequency energy along X, smoothed and scaled to peak 1.
struct EnergyProfile {
  Eigen::Index first_col = 0;  // image column of values(0)
  Eigen::ArrayXd values;
  double raw_peak = 0.0;       // peak before normalisation

  Eigen::Index size() const noexcept { return values.size(); }
  Eigen::Index column(Eigen::Index i) const noexcept { return first_col + i; }
  double at_column(Eigen::Index col) const { return values(col - first_col); }
};

/// Below this raw peak the scene counts as unmodulated and the profile is
/// left at zero.
inline constexpr double kDegenerateEnergy = 1e-9;

/// Smooths `raw` with a centred moving average of odd width `smooth_w` and
/// normalises to peak 1.
EnergyProfile make_profile(const Eigen::ArrayXd& raw, Eigen::Index first_col,
                           Eigen::Index smooth_w);

EnergyProfile energy_profile(const FrameImage& img, const LitArea& area,
                             double pixels_per_bit, Eigen::Index smooth_w,
                             WindowStatistic stat = WindowStatistic::Mean);

/// Default smoothing width: T_d rounded to the nearest odd integer >= 1.
Eigen::Index default_smoothing(double pixels_per_bit);

/// Transmission regions separated by interference centres. Regions and
/// centres together tile the profile's columns.
struct RegionMap {
  std::vector<ColumnRange> regions;
  std::vector<Eigen::Index> centers;
  std::vector<Parity> parity_hint;  // alternating from the left
};

/// Interference centres are interior local minima below `min_depth` that
/// are prominent on both sides: walking outwards from the minimum, the
/// profile climbs at least `prominence` above it before reaching anything
/// lower. Plateau minima resolve to their centre column (leftward on ties).
/// Throws ConfigError unless 0 < min_depth < 1 and 0 <= prominence <= 1.
RegionMap split_regions(const EnergyProfile& profile, double min_depth, double prominence);

/// split_regions with prominence = default_prominence(min_depth).
RegionMap split_regions(const EnergyProfile& profile, double min_depth);

/// 0.3 (1 - min_depth).
double default_prominence(double min_depth);

/// A window whose smoothed energy across a dip falls below this fraction of
/// its own peak there counts as cancelled at that dip.
inline constexpr double kQuietRatio = 0.1;

/// Sub-window estimate of the interference centre inside `span`. The row
/// windows whose energy across the span drops below kQuietRatio of their
/// own peak are averaged, and the minimum of that average (smoothed over
/// 2 default_smoothing + 1 columns) is returned. All transmitters send
/// their end markers at the same rows, so a true centre always has such a
/// window. Returns -1 when none qualifies.
Eigen::Index quiet_center(const FrameImage& img, const LitArea& area, const ColumnRange& span,
                          double pixels_per_bit);

/// `map` with every centre moved to the quiet_center of its dip, which
/// reaches from the profile maximum since the previous centre to the
/// maximum before the next one. Regions are re-tiled.
RegionMap refine_centers(const FrameImage& img, const LitArea& area,
                         const EnergyProfile& profile, const RegionMap& map,
                         double pixels_per_bit);

/// Strict interior local minima of `values` (plateaus collapse to their
/// centre, leftward on ties). Indices are profile-relative.
std::vector<Eigen::Index> local_minima(const Eigen::ArrayXd& values);
std::vector<Eigen::Index> local_maxima(const Eigen::ArrayXd& values);

/// Columns of `region` where one LED dominates most strongly: the
/// contiguous run around the peak of floor energy over squared mean
/// brightness, kept while it stays above `keep` times that peak.
ColumnRange dominant_span(const FrameImage& img, const LitArea& area,
                          const ColumnRange& region, double pixels_per_bit,
                          double keep = 0.8);

/// Two-column CSV "col_index,energy".
void write_energy_csv(std::ostream& out, const EnergyProfile& profile);

}  // namespace rsvlc
