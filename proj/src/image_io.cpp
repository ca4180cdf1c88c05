// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/image_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "rsvlc/error.hpp"

namespace rsvlc {

void write_pgm(std::ostream& out, const FrameImage& img) {
  out << "P5\n" << img.cols() << ' ' << img.rows() << "\n255\n";
  std::vector<unsigned char> line(static_cast<std::size_t>(img.cols()));
  for (Eigen::Index r = 0; r < img.rows(); ++r) {
    for (Eigen::Index c = 0; c < img.cols(); ++c) {
      line[static_cast<std::size_t>(c)] =
          static_cast<unsigned char>(std::lround(img(r, c) * 255.0));
    }
    out.write(reinterpret_cast<const char*>(line.data()),
              static_cast<std::streamsize>(line.size()));
  }
  if (!out) throw Error(ErrorKind::IoError, "failed writing PGM stream");
}

void write_pgm(const std::filesystem::path& path, const FrameImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  write_pgm(out, img);
}

namespace {

long read_header_int(std::istream& in) {
  int ch = in.peek();
  while (ch != EOF) {
    if (std::isspace(ch)) {
      in.get();
    } else if (ch == '#') {
      std::string skip;
      std::getline(in, skip);
    } else {
      break;
    }
    ch = in.peek();
  }
  long value = -1;
  if (!(in >> value)) throw Error(ErrorKind::ParseError, "malformed PGM header");
  return value;
}

}  // namespace

FrameImage read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || magic[1] != '5') {
    throw Error(ErrorKind::ParseError, "not a binary PGM (P5) image");
  }
  const long cols = read_header_int(in);
  const long rows = read_header_int(in);
  const long maxval = read_header_int(in);
  if (cols < 1 || rows < 1) throw Error(ErrorKind::ParseError, "PGM has no pixels");
  if (maxval < 1 || maxval > 255) {
    throw Error(ErrorKind::ParseError, "only 8-bit PGM (maxval <= 255) is supported");
  }
  in.get();  // single whitespace before the raster

  std::vector<unsigned char> raster(static_cast<std::size_t>(rows * cols));
  in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  if (in.gcount() != static_cast<std::streamsize>(raster.size())) {
    throw Error(ErrorKind::ParseError, "PGM raster is truncated");
  }
  ImageArray<double> px(rows, cols);
  const double scale = 1.0 / static_cast<double>(maxval);
  for (long r = 0; r < rows; ++r) {
    for (long c = 0; c < cols; ++c) {
      px(r, c) = static_cast<double>(raster[static_cast<std::size_t>(r * cols + c)]) * scale;
    }
  }
  return FrameImage(std::move(px));
}

FrameImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return read_pgm(in);
}

}  // namespace rsvlc
