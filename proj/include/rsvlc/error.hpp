// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rsvlc {

/// Failure categories surfaced by the pipeline. The CLI prints the name
/// verbatim, so keep `to_string` in sync when adding entries.
enum class ErrorKind {
  ConfigError,
  LengthError,
  PreambleMismatch,
  OddLedCount,
  NoLightSource,
  WindowTooLarge,
  RegionTooShort,
  NoTransitions,
  SyncNotFound,
  AmbiguousParity,
  OutOfRange,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }

  // Bit index for PreambleMismatch, unset otherwise.
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
};

}  // namespace rsvlc
