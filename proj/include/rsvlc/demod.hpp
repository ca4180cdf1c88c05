// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rsvlc/camera.hpp"
#include "rsvlc/detector.hpp"
#include "rsvlc/protocol.hpp"

namespace rsvlc {

/// One sample per pixel row.
using Signal1D = Eigen::ArrayXd;

/// Bit clock in samples: boundary k sits at phase + k * period.
struct ClockEstimate {
  double period = 0.0;
  double phase = 0.0;
};

struct ClockGains {
  double phase = 0.3;
  double period = 0.05;
};

/// Row means over the columns of `region`, restricted to the rows of
/// `area`. Regions wider than 4 T_d drop the columns closer than T_d to
/// either edge. Throws RegionTooShort below 28 T_d rows.
Signal1D collapse(const FrameImage& img, const LitArea& area, const ColumnRange& region,
                  double pixels_per_bit);

/// Subtracts a centred moving average spanning 3 T_d samples (rounded to an
/// odd count, shrunk at the ends). Throws LengthError unless the signal is
/// longer than 3 T_d.
Signal1D remove_dc(const Signal1D& s, double pixels_per_bit);

/// +0.5 where z >= 0, -0.5 elsewhere.
template <typename Derived>
Signal1D threshold(const Eigen::ArrayBase<Derived>& s) {
  return (s >= 0.0).select(Signal1D::Constant(s.size(), 0.5),
                           Signal1D::Constant(s.size(), -0.5));
}

/// Sample indices where the sign of `s` changes (index of the first sample
/// of the new level).
std::vector<double> transitions(const Signal1D& s);

/// State of the early-late loop after each accepted transition.
struct ClockTrace {
  std::vector<double> edge;      // observed transition position
  std::vector<double> bit;       // cumulative bit index assigned to it
  std::vector<double> period;    // period estimate after the update
};

/// One pass of the transition-driven early-late gate: the timing error of
/// each edge against the predicted boundary nudges the phase by
/// `gains.phase * err` and the period by `gains.period * err / bits`.
/// Edges less than half a period after the last boundary are ignored.
ClockTrace early_late_track(std::span<const double> edges, double nominal_period,
                            const ClockGains& gains = {});

/// Two gate passes (the second seeded with the first's period) followed by
/// a least-squares fit of edge position against assigned bit index.
/// Throws NoTransitions below 8 transitions.
ClockEstimate recover_clock(const Signal1D& thresholded, double nominal_period,
                            const ClockGains& gains = {});

/// Samples round(phase + (k + 1/2) period) for every k that stays in range.
Bits slice_bits(const Signal1D& thresholded, const ClockEstimate& clock);

/// Decodes a cyclic bit stream of unknown phase. Each 28-bit window is
/// searched for the six-bit run formed by the end marker and the following
/// preamble pair, rotated to frame start and passed to decode_frame.
/// Throws LengthError below 28 bits, SyncNotFound when no window holds the
/// run, otherwise the first PreambleMismatch.
std::uint8_t parse_stream(std::span<const std::uint8_t> bits, Parity parity);

/// Even for 1010, Odd for 0101, AmbiguousParity otherwise.
Parity infer_parity(std::span<const std::uint8_t> end_marker_bits);

struct StreamDecode {
  std::uint8_t payload = 0;
  // Unset for 0x00 and 0xFF, whose Even and Odd streams are rotations of
  // each other.
  std::optional<Parity> parity;
};

/// parse_stream under both parities. Rethrows the Even-parity error when
/// neither succeeds.
StreamDecode parse_stream_any(std::span<const std::uint8_t> bits);

/// CSV "row_index,raw,dc_removed,thresholded".
void write_signal_csv(std::ostream& out, const Signal1D& raw, const Signal1D& dc_removed,
                      const Signal1D& thresholded);

}  // namespace rsvlc
