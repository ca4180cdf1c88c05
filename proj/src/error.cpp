// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/error.hpp"

namespace rsvlc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::LengthError: return "LengthError";
    case ErrorKind::PreambleMismatch: return "PreambleMismatch";
    case ErrorKind::OddLedCount: return "OddLedCount";
    case ErrorKind::NoLightSource: return "NoLightSource";
    case ErrorKind::WindowTooLarge: return "WindowTooLarge";
    case ErrorKind::RegionTooShort: return "RegionTooShort";
    case ErrorKind::NoTransitions: return "NoTransitions";
    case ErrorKind::SyncNotFound: return "SyncNotFound";
    case ErrorKind::AmbiguousParity: return "AmbiguousParity";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& message) {
  std::string out(to_string(kind));
  if (!message.empty()) {
    out += ": ";
    out += message;
  }
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(format_message(kind, message)),
      kind_(kind),
      position_(position) {}

}  // namespace rsvlc
