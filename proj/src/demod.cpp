// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/demod.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "rsvlc/error.hpp"
#include "rsvlc/signal.hpp"

namespace rsvlc {

Signal1D collapse(const FrameImage& img, const LitArea& area, const ColumnRange& region,
                  double pixels_per_bit) {
  if (region.empty()) throw Error(ErrorKind::ConfigError, "empty region");
  if (region.first < 0 || region.last >= img.cols() || area.row_min < 0 ||
      area.row_max >= img.rows()) {
    throw Error(ErrorKind::OutOfRange, "region outside frame");
  }
  const double need = static_cast<double>(kFrameBits) * pixels_per_bit;
  if (static_cast<double>(area.row_span()) < need) {
    throw Error(ErrorKind::RegionTooShort,
                std::to_string(area.row_span()) + " rows, one frame needs " +
                    std::to_string(static_cast<long>(std::ceil(need))));
  }
  ColumnRange cols = region;
  if (static_cast<double>(region.width()) > 4.0 * pixels_per_bit) {
    const auto guard = static_cast<Eigen::Index>(std::ceil(pixels_per_bit));
    cols = {region.first + guard, region.last - guard};
  }
  return img.pixels()
      .block(area.row_min, cols.first, area.row_span(), cols.width())
      .rowwise()
      .mean();
}

Signal1D remove_dc(const Signal1D& s, double pixels_per_bit) {
  const double span = 3.0 * pixels_per_bit;
  if (!(static_cast<double>(s.size()) > span)) {
    throw Error(ErrorKind::LengthError, "signal of " + std::to_string(s.size()) +
                                            " samples is not longer than 3 T_d");
  }
  const auto half = static_cast<Eigen::Index>(std::floor(span / 2.0));
  return s - moving_average(s, 2 * half + 1);
}

std::vector<double> transitions(const Signal1D& s) {
  std::vector<double> out;
  for (Eigen::Index i = 1; i < s.size(); ++i) {
    if ((s(i) >= 0.0) != (s(i - 1) >= 0.0)) out.push_back(static_cast<double>(i));
  }
  return out;
}

ClockTrace early_late_track(std::span<const double> edges, double nominal_period,
                            const ClockGains& gains) {
  if (!(nominal_period > 0.0)) throw Error(ErrorKind::ConfigError, "nominal period must be > 0");
  ClockTrace trace;
  if (edges.empty()) return trace;
  double period = nominal_period;
  double boundary = edges.front();
  double bit = 0.0;
  trace.edge.push_back(boundary);
  trace.bit.push_back(bit);
  trace.period.push_back(period);
  for (std::size_t j = 1; j < edges.size(); ++j) {
    const double elapsed = edges[j] - boundary;
    const double bits = std::round(elapsed / period);
    if (bits < 1.0) continue;
    const double err = elapsed - bits * period;
    boundary += bits * period + gains.phase * err;
    period += gains.period * err / bits;
    bit += bits;
    trace.edge.push_back(edges[j]);
    trace.bit.push_back(bit);
    trace.period.push_back(period);
  }
  return trace;
}

ClockEstimate recover_clock(const Signal1D& thresholded, double nominal_period,
                            const ClockGains& gains) {
  const std::vector<double> edges = transitions(thresholded);
  if (edges.size() < 8) {
    throw Error(ErrorKind::NoTransitions,
                std::to_string(edges.size()) + " level transitions, need at least 8");
  }
  const ClockTrace first = early_late_track(edges, nominal_period, gains);
  const ClockTrace trace = early_late_track(edges, first.period.back(), gains);

  // Least-squares line edge = phase + bit * period over the labelled edges.
  const auto n = static_cast<Eigen::Index>(trace.edge.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = 1.0;
    design(i, 1) = trace.bit[static_cast<std::size_t>(i)];
    rhs(i) = trace.edge[static_cast<std::size_t>(i)];
  }
  ClockEstimate clock;
  if (trace.bit.back() > 0.0) {
    const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(rhs);
    clock.period = fit(1);
    clock.phase = fit(0);
  } else {
    clock.period = trace.period.back();
    clock.phase = trace.edge.front();
  }
  if (!(clock.period > 0.0)) {
    throw Error(ErrorKind::NoTransitions, "clock fit diverged");
  }
  clock.phase = std::fmod(clock.phase, clock.period);
  if (clock.phase < 0.0) clock.phase += clock.period;
  return clock;
}

Bits slice_bits(const Signal1D& thresholded, const ClockEstimate& clock) {
  if (!(clock.period > 0.0)) throw Error(ErrorKind::ConfigError, "clock period must be > 0");
  Bits bits;
  for (long k = 0;; ++k) {
    const double at = clock.phase + (static_cast<double>(k) + 0.5) * clock.period;
    const auto idx = static_cast<Eigen::Index>(std::lround(at));
    if (idx >= thresholded.size()) break;
    if (idx < 0) continue;
    bits.push_back(thresholded(idx) > 0.0 ? 1 : 0);
  }
  return bits;
}

namespace {

// Six-bit run: end marker followed by the next frame's first preamble pair.
constexpr std::size_t kSyncRun = kEndMarkerBits + 2;

}  // namespace

std::uint8_t parse_stream(std::span<const std::uint8_t> bits, Parity parity) {
  if (bits.size() < kFrameBits) {
    throw Error(ErrorKind::LengthError, "stream of " + std::to_string(bits.size()) +
                                            " bits is shorter than one frame");
  }
  const auto pre = preamble_bits(parity);
  std::optional<Error> first_error;
  std::array<std::uint8_t, kFrameBits> frame{};
  for (std::size_t offset = 0; offset + kFrameBits <= bits.size(); ++offset) {
    const auto window = bits.subspan(offset, kFrameBits);
    for (std::size_t j = 0; j < kFrameBits; ++j) {
      bool run = true;
      for (std::size_t t = 0; t < kSyncRun && run; ++t) {
        run = window[(j + t) % kFrameBits] == pre[t % 2];
      }
      if (!run) continue;
      const std::size_t start = (j + kEndMarkerBits) % kFrameBits;
      for (std::size_t t = 0; t < kFrameBits; ++t) frame[t] = window[(start + t) % kFrameBits];
      try {
        return decode_frame(frame, parity);
      } catch (const Error& e) {
        if (!first_error) first_error = e;
      }
    }
  }
  if (first_error) throw *first_error;
  throw Error(ErrorKind::SyncNotFound,
              std::string("no ") + std::string(to_string(parity)) + " end marker in stream");
}

Parity infer_parity(std::span<const std::uint8_t> end_marker_bits) {
  if (end_marker_bits.size() != kEndMarkerBits) {
    throw Error(ErrorKind::LengthError, "end marker must have 4 bits");
  }
  for (Parity p : {Parity::Even, Parity::Odd}) {
    const auto m = end_marker(p);
    if (std::equal(m.begin(), m.end(), end_marker_bits.begin())) return p;
  }
  throw Error(ErrorKind::AmbiguousParity,
              "end marker " + bits_to_string(end_marker_bits) + " matches neither parity");
}

StreamDecode parse_stream_any(std::span<const std::uint8_t> bits) {
  std::optional<std::uint8_t> even;
  std::optional<std::uint8_t> odd;
  std::optional<Error> even_error;
  try {
    even = parse_stream(bits, Parity::Even);
  } catch (const Error& e) {
    even_error = e;
  }
  try {
    odd = parse_stream(bits, Parity::Odd);
  } catch (const Error&) {
  }
  if (even && odd) return {*even, std::nullopt};
  if (even) return {*even, Parity::Even};
  if (odd) return {*odd, Parity::Odd};
  throw *even_error;
}

void write_signal_csv(std::ostream& out, const Signal1D& raw, const Signal1D& dc_removed,
                      const Signal1D& thresholded) {
  out << "row_index,raw,dc_removed,thresholded\n";
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    out << i << ',' << format_number(raw(i)) << ',' << format_number(dc_removed(i)) << ','
        << format_number(thresholded(i)) << '\n';
  }
}

}  // namespace rsvlc
