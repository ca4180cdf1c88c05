// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/detector.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <utility>
#include <ostream>
#include <string>

#include "rsvlc/error.hpp"
#include "rsvlc/signal.hpp"

namespace rsvlc {

LitArea LitArea::whole(const FrameImage& img) {
  LitArea area;
  area.row_min = 0;
  area.row_max = img.rows() - 1;
  area.col_min = 0;
  area.col_max = img.cols() - 1;
  area.mask.setConstant(img.rows(), img.cols(), true);
  area.pixel_count = static_cast<std::size_t>(img.rows() * img.cols());
  return area;
}

ImageArray<double> gaussian_blur(const ImageArray<double>& img, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::ConfigError, "blur sigma must be > 0");
  const Eigen::Index radius = static_cast<Eigen::Index>(std::ceil(3.0 * sigma));
  Eigen::ArrayXd kernel(2 * radius + 1);
  for (Eigen::Index k = -radius; k <= radius; ++k) {
    kernel(k + radius) = std::exp(-0.5 * static_cast<double>(k * k) / (sigma * sigma));
  }
  kernel /= kernel.sum();

  const Eigen::Index rows = img.rows();
  const Eigen::Index cols = img.cols();

  ImageArray<double> padded(rows, cols + 2 * radius);
  padded.middleCols(radius, cols) = img;
  for (Eigen::Index k = 0; k < radius; ++k) {
    padded.col(k) = img.col(0);
    padded.col(radius + cols + k) = img.col(cols - 1);
  }
  ImageArray<double> horiz = ImageArray<double>::Zero(rows, cols);
  for (Eigen::Index k = 0; k < kernel.size(); ++k) {
    horiz += kernel(k) * padded.middleCols(k, cols);
  }

  padded.resize(rows + 2 * radius, cols);
  padded.middleRows(radius, rows) = horiz;
  for (Eigen::Index k = 0; k < radius; ++k) {
    padded.row(k) = horiz.row(0);
    padded.row(radius + rows + k) = horiz.row(rows - 1);
  }
  ImageArray<double> out = ImageArray<double>::Zero(rows, cols);
  for (Eigen::Index k = 0; k < kernel.size(); ++k) {
    out += kernel(k) * padded.middleRows(k, rows);
  }
  return out;
}

std::vector<LitArea> find_lit_areas(const FrameImage& img, double blur_sigma,
                                    double threshold, std::size_t min_area) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorKind::ConfigError, "lit threshold must lie in (0, 1)");
  }
  if (img.empty()) throw Error(ErrorKind::NoLightSource, "empty frame");
  const ImageArray<double> blurred = gaussian_blur(img.pixels(), blur_sigma);
  const double lo = blurred.minCoeff();
  const double hi = blurred.maxCoeff();
  if (!(hi - lo > 1e-12)) throw Error(ErrorKind::NoLightSource, "frame is uniform");
  const double level = lo + threshold * (hi - lo);

  const Eigen::Index rows = img.rows();
  const Eigen::Index cols = img.cols();
  const Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> bright =
      blurred > level;
  Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> label =
      Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Constant(rows, cols, -1);

  std::vector<LitArea> areas;
  std::deque<std::pair<Eigen::Index, Eigen::Index>> queue;
  int next = 0;
  for (Eigen::Index r0 = 0; r0 < rows; ++r0) {
    for (Eigen::Index c0 = 0; c0 < cols; ++c0) {
      if (!bright(r0, c0) || label(r0, c0) >= 0) continue;
      const int id = next++;
      std::vector<std::pair<Eigen::Index, Eigen::Index>> members;
      LitArea area;
      area.row_min = area.row_max = r0;
      area.col_min = area.col_max = c0;
      label(r0, c0) = id;
      queue.emplace_back(r0, c0);
      while (!queue.empty()) {
        const auto [r, c] = queue.front();
        queue.pop_front();
        members.emplace_back(r, c);
        area.row_min = std::min(area.row_min, r);
        area.row_max = std::max(area.row_max, r);
        area.col_min = std::min(area.col_min, c);
        area.col_max = std::max(area.col_max, c);
        const std::pair<Eigen::Index, Eigen::Index> next_px[4] = {
            {r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
        for (const auto& [nr, nc] : next_px) {
          if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
          if (!bright(nr, nc) || label(nr, nc) >= 0) continue;
          label(nr, nc) = id;
          queue.emplace_back(nr, nc);
        }
      }
      if (members.size() < min_area) continue;
      area.pixel_count = members.size();
      area.mask.setConstant(area.row_span(), area.col_span(), false);
      for (const auto& [r, c] : members) area.mask(r - area.row_min, c - area.col_min) = true;
      areas.push_back(std::move(area));
    }
  }
  if (areas.empty()) {
    throw Error(ErrorKind::NoLightSource, "no lit component of at least " +
                                              std::to_string(min_area) + " pixels");
  }
  std::stable_sort(areas.begin(), areas.end(), [](const LitArea& a, const LitArea& b) {
    return a.pixel_count > b.pixel_count;
  });
  return areas;
}

std::vector<LitArea> find_lit_areas(const FrameImage& img, double pixels_per_bit) {
  const double side = 3.0 * pixels_per_bit;
  return find_lit_areas(img, pixels_per_bit, 0.25,
                        static_cast<std::size_t>(std::ceil(side * side)));
}

Eigen::Index energy_window(double pixels_per_bit) {
  if (!(pixels_per_bit > 0.0)) throw Error(ErrorKind::ConfigError, "T_d must be > 0");
  return static_cast<Eigen::Index>(std::ceil(3.0 * pixels_per_bit - 1e-9));
}

namespace {

// Windows x columns matrix of DC-free window energies for a block of columns.
Eigen::ArrayXXd block_window_energies(const FrameImage& img, const LitArea& area,
                                      Eigen::Index first_col, Eigen::Index ncols,
                                      double pixels_per_bit) {
  const Eigen::Index w = energy_window(pixels_per_bit);
  const Eigen::Index windows = area.row_span() / w;
  if (windows < 1) {
    throw Error(ErrorKind::WindowTooLarge,
                "lit area spans " + std::to_string(area.row_span()) +
                    " rows, energy window needs " + std::to_string(w));
  }
  Eigen::ArrayXXd energies(windows, ncols);
  for (Eigen::Index k = 0; k < windows; ++k) {
    const auto block = img.pixels().block(area.row_min + k * w, first_col, w, ncols);
    const Eigen::Array<double, 1, Eigen::Dynamic> mean = block.colwise().mean();
    energies.row(k) = (block.rowwise() - mean).square().colwise().sum();
  }
  return energies;
}

Eigen::ArrayXd reduce(const Eigen::ArrayXXd& energies, WindowStatistic stat) {
  if (stat == WindowStatistic::Floor) return energies.colwise().minCoeff().transpose();
  return energies.colwise().mean().transpose();
}

void check_column(const LitArea& area, Eigen::Index col) {
  if (col < area.col_min || col > area.col_max) {
    throw Error(ErrorKind::OutOfRange, "column " + std::to_string(col) + " outside lit area");
  }
}

}  // namespace

Eigen::ArrayXd window_energies(const FrameImage& img, const LitArea& area,
                               Eigen::Index col, double pixels_per_bit) {
  check_column(area, col);
  return block_window_energies(img, area, col, 1, pixels_per_bit).col(0);
}

double column_energy(const FrameImage& img, const LitArea& area, Eigen::Index col,
                     double pixels_per_bit, WindowStatistic stat) {
  check_column(area, col);
  return reduce(block_window_energies(img, area, col, 1, pixels_per_bit), stat)(0);
}

Eigen::ArrayXd column_energies(const FrameImage& img, const LitArea& area,
                               double pixels_per_bit, WindowStatistic stat) {
  return reduce(block_window_energies(img, area, area.col_min, area.col_span(), pixels_per_bit),
                stat);
}

EnergyProfile make_profile(const Eigen::ArrayXd& raw, Eigen::Index first_col,
                           Eigen::Index smooth_w) {
  if (smooth_w < 1 || smooth_w % 2 == 0) {
    throw Error(ErrorKind::ConfigError, "smoothing width must be odd and >= 1");
  }
  EnergyProfile profile;
  profile.first_col = first_col;
  profile.values = moving_average(raw, smooth_w);
  profile.raw_peak = profile.values.size() > 0 ? profile.values.maxCoeff() : 0.0;
  if (profile.raw_peak < kDegenerateEnergy) {
    profile.values.setZero();
  } else {
    profile.values /= profile.raw_peak;
  }
  return profile;
}

EnergyProfile energy_profile(const FrameImage& img, const LitArea& area,
                             double pixels_per_bit, Eigen::Index smooth_w,
                             WindowStatistic stat) {
  return make_profile(column_energies(img, area, pixels_per_bit, stat), area.col_min, smooth_w);
}

Eigen::Index default_smoothing(double pixels_per_bit) {
  auto w = static_cast<Eigen::Index>(std::lround(pixels_per_bit));
  if (w < 1) w = 1;
  if (w % 2 == 0) ++w;
  return w;
}

namespace {

template <typename Compare>
std::vector<Eigen::Index> plateau_extrema(const Eigen::ArrayXd& v, Compare beyond) {
  std::vector<Eigen::Index> out;
  const Eigen::Index n = v.size();
  Eigen::Index i = 1;
  while (i < n - 1) {
    Eigen::Index j = i;
    while (j + 1 < n && v(j + 1) == v(i)) ++j;
    if (j < n - 1 && beyond(v(i), v(i - 1)) && beyond(v(i), v(j + 1))) {
      out.push_back(i + (j - i) / 2);
    }
    i = j + 1;
  }
  return out;
}

}  // namespace

std::vector<Eigen::Index> local_minima(const Eigen::ArrayXd& values) {
  return plateau_extrema(values, [](double x, double nb) { return x < nb; });
}

std::vector<Eigen::Index> local_maxima(const Eigen::ArrayXd& values) {
  return plateau_extrema(values, [](double x, double nb) { return x > nb; });
}

namespace {

// Regions between consecutive profile-relative centres.
RegionMap tile(const EnergyProfile& profile, const std::vector<Eigen::Index>& centers) {
  const Eigen::Index n = profile.size();
  RegionMap map;
  Eigen::Index start = 0;
  for (auto c : centers) {
    map.regions.push_back({profile.column(start), profile.column(c - 1)});
    map.centers.push_back(profile.column(c));
    start = c + 1;
  }
  if (n > 0) map.regions.push_back({profile.column(start), profile.column(n - 1)});
  for (std::size_t k = 0; k < map.regions.size(); ++k) map.parity_hint.push_back(parity_of(k));
  return map;
}

}  // namespace

double default_prominence(double min_depth) { return 0.3 * (1.0 - min_depth); }

namespace {

// Bounding maxima of the dip at `i`: the highest values reached walking
// outwards before meeting anything lower. Equal values are crossed to the
// left only, so of two equal minima only the right one keeps its depth.
std::pair<Eigen::Index, Eigen::Index> dip_peaks(const Eigen::ArrayXd& v, Eigen::Index i) {
  Eigen::Index left = i;
  for (Eigen::Index k = i; k > 0 && v(k - 1) >= v(i); --k) {
    if (v(k - 1) > v(left)) left = k - 1;
  }
  Eigen::Index right = i;
  for (Eigen::Index k = i; k + 1 < v.size() && v(k + 1) > v(i); ++k) {
    if (v(k + 1) > v(right)) right = k + 1;
  }
  return {left, right};
}

}  // namespace

RegionMap split_regions(const EnergyProfile& profile, double min_depth) {
  return split_regions(profile, min_depth, default_prominence(min_depth));
}

RegionMap split_regions(const EnergyProfile& profile, double min_depth, double prominence) {
  if (!(min_depth > 0.0 && min_depth < 1.0)) {
    throw Error(ErrorKind::ConfigError, "min_depth must lie in (0, 1)");
  }
  if (!(prominence >= 0.0 && prominence <= 1.0)) {
    throw Error(ErrorKind::ConfigError, "prominence must lie in [0, 1]");
  }
  const Eigen::ArrayXd& v = profile.values;
  std::vector<Eigen::Index> centers;
  for (Eigen::Index i : local_minima(v)) {
    if (!(v(i) < min_depth)) continue;
    const auto [left, right] = dip_peaks(v, i);
    if (v(left) - v(i) >= prominence && v(right) - v(i) >= prominence) centers.push_back(i);
  }
  return tile(profile, centers);
}

Eigen::Index quiet_center(const FrameImage& img, const LitArea& area, const ColumnRange& span,
                          double pixels_per_bit) {
  if (span.empty() || span.first < area.col_min || span.last > area.col_max) {
    throw Error(ErrorKind::OutOfRange, "dip span outside lit area");
  }
  const Eigen::ArrayXXd energies =
      block_window_energies(img, area, span.first, span.width(), pixels_per_bit);
  const Eigen::Index smooth = default_smoothing(pixels_per_bit);
  Eigen::ArrayXd quiet = Eigen::ArrayXd::Zero(energies.cols());
  int used = 0;
  for (Eigen::Index w = 0; w < energies.rows(); ++w) {
    const Eigen::ArrayXd row = energies.row(w).transpose();
    const Eigen::ArrayXd sm = moving_average(row, smooth);
    if (sm.maxCoeff() > 0.0 && sm.minCoeff() < kQuietRatio * sm.maxCoeff()) {
      quiet += row;
      ++used;
    }
  }
  if (used == 0) return -1;
  const Eigen::ArrayXd sm = moving_average(quiet, 2 * smooth + 1);
  Eigen::Index lo = 0;
  sm.minCoeff(&lo);
  Eigen::Index hi = lo;
  while (hi + 1 < sm.size() && sm(hi + 1) == sm(lo)) ++hi;
  return span.first + lo + (hi - lo) / 2;
}

RegionMap refine_centers(const FrameImage& img, const LitArea& area,
                         const EnergyProfile& profile, const RegionMap& map,
                         double pixels_per_bit) {
  const Eigen::ArrayXd& v = profile.values;
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> centers;
  for (std::size_t k = 0; k < map.centers.size(); ++k) {
    const Eigen::Index c = map.centers[k] - profile.first_col;
    // The dip reaches from the highest point since the previous centre to
    // the highest point before the next one.
    const Eigen::Index from = k == 0 ? 0 : map.centers[k - 1] - profile.first_col;
    const Eigen::Index to = k + 1 == map.centers.size() ? n - 1
                                                        : map.centers[k + 1] - profile.first_col;
    Eigen::Index left = 0;
    Eigen::Index right = 0;
    v.segment(from, c - from + 1).maxCoeff(&left);
    v.segment(c, to - c + 1).maxCoeff(&right);
    const ColumnRange span{profile.column(from + left), profile.column(c + right)};
    const Eigen::Index found = quiet_center(img, area, span, pixels_per_bit);
    Eigen::Index refined = found < 0 ? c : found - profile.first_col;
    // Keep every region at least one column wide.
    refined = std::clamp<Eigen::Index>(refined, centers.empty() ? 1 : centers.back() + 2,
                                       n - 2);
    centers.push_back(refined);
  }
  return tile(profile, centers);
}

ColumnRange dominant_span(const FrameImage& img, const LitArea& area,
                          const ColumnRange& region, double pixels_per_bit, double keep) {
  if (region.empty() || region.first < area.col_min || region.last > area.col_max) {
    throw Error(ErrorKind::OutOfRange, "region outside lit area");
  }
  const Eigen::ArrayXd floor =
      reduce(block_window_energies(img, area, region.first, region.width(), pixels_per_bit),
             WindowStatistic::Floor);
  const Eigen::ArrayXd brightness =
      img.pixels()
          .block(area.row_min, region.first, area.row_span(), region.width())
          .colwise()
          .mean()
          .transpose();
  const Eigen::ArrayXd contrast = moving_average(
      (floor / brightness.square().max(1e-12)).eval(), default_smoothing(pixels_per_bit));
  Eigen::Index peak = 0;
  contrast.maxCoeff(&peak);
  const double level = keep * contrast(peak);
  Eigen::Index lo = peak;
  Eigen::Index hi = peak;
  while (lo > 0 && contrast(lo - 1) >= level) --lo;
  while (hi + 1 < contrast.size() && contrast(hi + 1) >= level) ++hi;
  return {region.first + lo, region.first + hi};
}

void write_energy_csv(std::ostream& out, const EnergyProfile& profile) {
  out << "col_index,energy\n";
  for (Eigen::Index i = 0; i < profile.size(); ++i) {
    out << profile.column(i) << ',' << format_number(profile.values(i)) << '\n';
  }
}

}  // namespace rsvlc
