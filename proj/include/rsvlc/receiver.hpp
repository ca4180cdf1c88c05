// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rsvlc/camera.hpp"
#include "rsvlc/demod.hpp"
#include "rsvlc/detector.hpp"

namespace rsvlc {

struct ReceiverConfig {
  double pixels_per_bit = 8.0;
  double min_depth = 0.5;
  Eigen::Index smooth_width = 0;  // 0 selects default_smoothing
  WindowStatistic statistic = WindowStatistic::Floor;
  double keep = 0.8;
  ClockGains gains{};
};

/// Everything recovered from one transmission region.
struct RegionDecode {
  ColumnRange range;      // region columns
  ColumnRange collapsed;  // columns averaged into the 1-D signal
  std::optional<Parity> parity;
  ClockEstimate clock;
  double energy_min = 0.0;  // lowest profile value bordering the region
  std::uint8_t payload = 0;
  Signal1D raw;
  Signal1D dc_removed;
  Signal1D thresholded;
};

struct DecodeResult {
  LitArea area;
  EnergyProfile profile;
  RegionMap map;
  std::vector<RegionDecode> regions;  // left to right
  bool reversed = false;              // message reads right to left
  std::vector<std::uint8_t> bytes;    // message order
};

/// Demodulates a single region of `area`.
RegionDecode decode_region(const FrameImage& img, const LitArea& area,
                           const ColumnRange& region, const ReceiverConfig& cfg);

/// Orders region payloads into a message. The first region with a known
/// parity fixes the reading direction (Even on the left reads left to
/// right); regions of unknown parity follow the alternation. Throws
/// OddLedCount for an odd region count and AmbiguousParity when the known
/// parities do not alternate.
std::vector<std::uint8_t> assemble_bytes(const std::vector<RegionDecode>& regions,
                                         bool* reversed = nullptr);

/// Full receiver on the largest lit area of `img`.
DecodeResult decode_message(const FrameImage& img, const ReceiverConfig& cfg);

}  // namespace rsvlc
