// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rsvlc {

/// Sequence of binary symbols, one per byte (values 0 or 1).
using Bits = std::vector<std::uint8_t>;

/// Preamble class of an LED. Adjacent LEDs alternate so that their
/// preambles are pointwise complements.
enum class Parity : std::uint8_t { Even, Odd };

constexpr Parity parity_of(std::size_t led_index) noexcept {
  return led_index % 2 == 0 ? Parity::Even : Parity::Odd;
}

constexpr Parity opposite(Parity p) noexcept {
  return p == Parity::Even ? Parity::Odd : Parity::Even;
}

/// Even sends (1,0), Odd sends (0,1).
constexpr std::array<std::uint8_t, 2> preamble_bits(Parity p) noexcept {
  return p == Parity::Even ? std::array<std::uint8_t, 2>{1, 0}
                           : std::array<std::uint8_t, 2>{0, 1};
}

std::string_view to_string(Parity p) noexcept;

inline constexpr std::size_t kDataBits = 8;
inline constexpr std::size_t kEndMarkerBits = 4;
inline constexpr std::size_t kFrameBits = kDataBits * 3 + kEndMarkerBits;
static_assert(kFrameBits == 28);

/// One LED's on-air frame: eight (preamble, preamble, data) triples, MSB
/// first, followed by the preamble pair repeated twice as end marker.
struct BitFrame {
  std::array<std::uint8_t, kFrameBits> bits{};
  std::uint8_t payload = 0;
  Parity parity = Parity::Even;

  std::string to_string() const;
};

BitFrame encode_frame(std::uint8_t payload, Parity parity);

/// Inverse of encode_frame. Throws LengthError unless `bits` has exactly 28
/// entries, and PreambleMismatch (with the first offending index) when any
/// preamble or end-marker bit disagrees with `expected`.
std::uint8_t decode_frame(std::span<const std::uint8_t> bits, Parity expected);

/// The end marker pattern for `p` (preamble pair repeated).
std::array<std::uint8_t, kEndMarkerBits> end_marker(Parity p) noexcept;

/// ASCII '0'/'1' fixtures.
std::string bits_to_string(std::span<const std::uint8_t> bits);
Bits bits_from_string(std::string_view text);

/// Cyclic on-off keying waveform of a frame: bit k occupies
/// [kT, (k+1)T) and the frame repeats every 28T.
class Waveform {
 public:
  Waveform(const BitFrame& frame, double period);

  int operator()(double t) const noexcept { return frame_.bits[slot(t)]; }

  /// Index of the bit transmitted at time `t`.
  std::size_t slot(double t) const noexcept;

  double period() const noexcept { return period_; }
  const BitFrame& frame() const noexcept { return frame_; }

 private:
  BitFrame frame_;
  double period_;
};

inline Waveform waveform(const BitFrame& frame, double period) {
  return Waveform(frame, period);
}

struct FrameAssignment {
  std::size_t index = 0;
  Parity parity = Parity::Even;
  std::uint8_t payload = 0;
  BitFrame frame;
};

/// Byte k of a message rides on the k-th LED along the X axis.
struct MessageLayout {
  std::vector<FrameAssignment> leds;

  std::vector<std::uint8_t> bytes() const;
};

/// Throws OddLedCount unless `bytes` has an even, non-zero length.
MessageLayout assemble_message(std::span<const std::uint8_t> bytes);

}  // namespace rsvlc
