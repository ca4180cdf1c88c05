// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>

#include "rsvlc/camera.hpp"

namespace rsvlc {

// Binary PGM (P5), maxval 255, sample = round(intensity * 255).
void write_pgm(std::ostream& out, const FrameImage& img);
void write_pgm(const std::filesystem::path& path, const FrameImage& img);

// Accepts P5 with maxval 1..255 and '#' comments in the header. Samples
// are scaled by 1/maxval. Throws ParseError / IoError.
FrameImage read_pgm(std::istream& in);
FrameImage read_pgm(const std::filesystem::path& path);

}  // namespace rsvlc
