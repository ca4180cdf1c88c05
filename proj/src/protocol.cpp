// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/protocol.hpp"

#include <cmath>

#include "rsvlc/error.hpp"

namespace rsvlc {

std::string_view to_string(Parity p) noexcept {
  return p == Parity::Even ? "Even" : "Odd";
}

BitFrame encode_frame(std::uint8_t payload, Parity parity) {
  BitFrame frame;
  frame.payload = payload;
  frame.parity = parity;
  const auto pre = preamble_bits(parity);
  std::size_t i = 0;
  for (std::size_t k = 0; k < kDataBits; ++k) {
    frame.bits[i++] = pre[0];
    frame.bits[i++] = pre[1];
    frame.bits[i++] = (payload >> (kDataBits - 1 - k)) & 1u;
  }
  for (auto b : end_marker(parity)) frame.bits[i++] = b;
  return frame;
}

std::array<std::uint8_t, kEndMarkerBits> end_marker(Parity p) noexcept {
  const auto pre = preamble_bits(p);
  return {pre[0], pre[1], pre[0], pre[1]};
}

std::uint8_t decode_frame(std::span<const std::uint8_t> bits, Parity expected) {
  if (bits.size() != kFrameBits) {
    throw Error(ErrorKind::LengthError,
                "frame must have 28 bits, got " + std::to_string(bits.size()));
  }
  const auto pre = preamble_bits(expected);
  std::uint8_t payload = 0;
  for (std::size_t k = 0; k < kDataBits; ++k) {
    const std::size_t base = 3 * k;
    for (std::size_t j = 0; j < 2; ++j) {
      if (bits[base + j] != pre[j]) {
        throw Error(ErrorKind::PreambleMismatch,
                    "bit " + std::to_string(base + j), base + j);
      }
    }
    payload = static_cast<std::uint8_t>((payload << 1) | (bits[base + 2] & 1u));
  }
  const auto marker = end_marker(expected);
  for (std::size_t j = 0; j < kEndMarkerBits; ++j) {
    const std::size_t at = 3 * kDataBits + j;
    if (bits[at] != marker[j]) {
      throw Error(ErrorKind::PreambleMismatch, "bit " + std::to_string(at), at);
    }
  }
  return payload;
}

std::string BitFrame::to_string() const { return bits_to_string(bits); }

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

Bits bits_from_string(std::string_view text) {
  Bits out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (c != ' ' && c != '_') {
      throw Error(ErrorKind::ParseError,
                  std::string("unexpected character '") + c + "' in bit string");
    }
  }
  return out;
}

Waveform::Waveform(const BitFrame& frame, double period)
    : frame_(frame), period_(period) {
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw Error(ErrorKind::ConfigError, "modulation period must be > 0");
  }
}

std::size_t Waveform::slot(double t) const noexcept {
  // Row times are products of floating-point periods; snap values a hair
  // below an integer boundary onto it.
  const double k = std::floor(t / period_ + 1e-9);
  const double n = static_cast<double>(kFrameBits);
  double m = std::fmod(k, n);
  if (m < 0) m += n;
  return static_cast<std::size_t>(m);
}

std::vector<std::uint8_t> MessageLayout::bytes() const {
  std::vector<std::uint8_t> out;
  out.reserve(leds.size());
  for (const auto& led : leds) out.push_back(led.payload);
  return out;
}

MessageLayout assemble_message(std::span<const std::uint8_t> bytes) {
  if (bytes.empty() || bytes.size() % 2 != 0) {
    throw Error(ErrorKind::OddLedCount,
                "an even, non-zero number of LEDs is required (got " +
                    std::to_string(bytes.size()) + ")");
  }
  MessageLayout layout;
  layout.leds.reserve(bytes.size());
  for (std::size_t k = 0; k < bytes.size(); ++k) {
    const Parity p = parity_of(k);
    layout.leds.push_back({k, p, bytes[k], encode_frame(bytes[k], p)});
  }
  return layout;
}

}  // namespace rsvlc
