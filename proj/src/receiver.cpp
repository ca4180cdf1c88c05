// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsvlc/error.hpp"

namespace rsvlc {

RegionDecode decode_region(const FrameImage& img, const LitArea& area,
                           const ColumnRange& region, const ReceiverConfig& cfg) {
  RegionDecode out;
  out.range = region;
  out.collapsed = dominant_span(img, area, region, cfg.pixels_per_bit, cfg.keep);
  out.raw = collapse(img, area, out.collapsed, cfg.pixels_per_bit);
  out.dc_removed = remove_dc(out.raw, cfg.pixels_per_bit);
  out.thresholded = threshold(out.dc_removed);
  out.clock = recover_clock(out.thresholded, cfg.pixels_per_bit, cfg.gains);
  const Bits bits = slice_bits(out.thresholded, out.clock);
  const StreamDecode decoded = parse_stream_any(bits);
  out.payload = decoded.payload;
  out.parity = decoded.parity;
  return out;
}

std::vector<std::uint8_t> assemble_bytes(const std::vector<RegionDecode>& regions,
                                         bool* reversed) {
  if (regions.empty() || regions.size() % 2 != 0) {
    throw Error(ErrorKind::OddLedCount,
                std::to_string(regions.size()) + " transmission regions, expected an even count");
  }
  const std::size_t n = regions.size();
  // Parity the leftmost region must have for a left-to-right reading.
  bool rev = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (regions[i].parity) {
      rev = *regions[i].parity != parity_of(i);
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t pos = rev ? n - 1 - i : i;
    if (regions[i].parity && *regions[i].parity != parity_of(pos)) {
      throw Error(ErrorKind::AmbiguousParity,
                  "region parities do not alternate", i);
    }
  }
  std::vector<std::uint8_t> bytes(n);
  for (std::size_t i = 0; i < n; ++i) bytes[rev ? n - 1 - i : i] = regions[i].payload;
  if (reversed) *reversed = rev;
  return bytes;
}

DecodeResult decode_message(const FrameImage& img, const ReceiverConfig& cfg) {
  if (!(cfg.pixels_per_bit > 0.0)) throw Error(ErrorKind::ConfigError, "T_d must be > 0");
  DecodeResult out;
  out.area = find_lit_areas(img, cfg.pixels_per_bit).front();
  const double need = static_cast<double>(kFrameBits) * cfg.pixels_per_bit;
  if (static_cast<double>(out.area.row_span()) < need) {
    throw Error(ErrorKind::RegionTooShort,
                "lit area spans " + std::to_string(out.area.row_span()) +
                    " rows, one frame needs " + std::to_string(static_cast<long>(std::ceil(need))));
  }
  const Eigen::Index smooth =
      cfg.smooth_width > 0 ? cfg.smooth_width : default_smoothing(cfg.pixels_per_bit);
  out.profile = energy_profile(img, out.area, cfg.pixels_per_bit, smooth, cfg.statistic);
  out.map = refine_centers(img, out.area, out.profile,
                           split_regions(out.profile, cfg.min_depth), cfg.pixels_per_bit);
  if (out.map.regions.size() % 2 != 0) {
    throw Error(ErrorKind::OddLedCount, std::to_string(out.map.regions.size()) +
                                            " transmission regions, expected an even count");
  }
  for (std::size_t i = 0; i < out.map.regions.size(); ++i) {
    RegionDecode region = decode_region(img, out.area, out.map.regions[i], cfg);
    double floor = 1.0;
    const ColumnRange& r = region.range;
    for (Eigen::Index c = std::max(r.first - 1, out.profile.first_col);
         c <= std::min(r.last + 1, out.profile.column(out.profile.size() - 1)); ++c) {
      floor = std::min(floor, out.profile.at_column(c));
    }
    region.energy_min = floor;
    out.regions.push_back(std::move(region));
  }
  out.bytes = assemble_bytes(out.regions, &out.reversed);
  return out;
}

}  // namespace rsvlc
