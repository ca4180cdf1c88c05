// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/scene.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>

#include "rsvlc/error.hpp"

namespace rsvlc {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

double to_double(std::string_view v, std::size_t line) {
  v = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty()) {
    fail(line, "expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_uint(std::string_view v, std::size_t line, std::uint64_t max) {
  v = trim(v);
  int base = 10;
  if (v.size() > 2 && v[0] == '0' && (v[1] == 'x' || v[1] == 'X')) {
    v.remove_prefix(2);
    base = 16;
  }
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out, base);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty() || out > max) {
    fail(line, "expected an integer in [0, " + std::to_string(max) + "], got '" +
                   std::string(v) + "'");
  }
  return out;
}

struct LedLine {
  LedSource led;
  std::uint8_t payload = 0;
};

LedLine parse_led(std::string_view rest, std::size_t line) {
  LedLine out;
  bool have_payload = false;
  std::istringstream fields{std::string(rest)};
  std::string field;
  while (fields >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) fail(line, "led field '" + field + "' is not key=value");
    const std::string_view key = std::string_view(field).substr(0, eq);
    const std::string_view value = std::string_view(field).substr(eq + 1);
    if (key == "x") out.led.x = to_double(value, line);
    else if (key == "y") out.led.y = to_double(value, line);
    else if (key == "h") out.led.h = to_double(value, line);
    else if (key == "m") out.led.m = to_double(value, line);
    else if (key == "c1") out.led.c1 = to_double(value, line);
    else if (key == "payload") {
      out.payload = static_cast<std::uint8_t>(to_uint(value, line, 255));
      have_payload = true;
    } else {
      fail(line, "unknown led field '" + std::string(key) + "'");
    }
  }
  if (!have_payload) fail(line, "led is missing payload=");
  return out;
}

}  // namespace

double SceneSpec::capture_time() const {
  return t0 ? *t0 : default_capture_time(leds, camera);
}

std::vector<std::uint8_t> SceneSpec::payloads() const {
  std::vector<std::uint8_t> out;
  out.reserve(leds.size());
  for (const auto& led : leds) out.push_back(led.frame.payload);
  return out;
}

SceneSpec parse_scene(std::istream& in) {
  SceneSpec scene;
  bool centered = true;
  std::vector<LedLine> leds;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    if (text.starts_with("led:")) {
      leds.push_back(parse_led(text.substr(4), line));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) fail(line, "expected key = value");
    const std::string_view key = trim(text.substr(0, eq));
    const std::string_view value = trim(text.substr(eq + 1));
    if (key == "rows") {
      scene.camera.rows = static_cast<Eigen::Index>(to_uint(value, line, 1u << 20));
    } else if (key == "cols") {
      scene.camera.cols = static_cast<Eigen::Index>(to_uint(value, line, 1u << 20));
    } else if (key == "row_period") {
      scene.camera.row_period = to_double(value, line);
    } else if (key == "pixel_pitch") {
      scene.camera.pixel_pitch = to_double(value, line);
    } else if (key == "origin") {
      if (value == "center") {
        centered = true;
      } else {
        const auto comma = value.find(',');
        if (comma == std::string_view::npos) fail(line, "origin must be 'center' or 'u,v'");
        scene.camera.origin = {to_double(value.substr(0, comma), line),
                               to_double(value.substr(comma + 1), line)};
        centered = false;
      }
    } else if (key == "noise_sigma") {
      scene.camera.noise_sigma = to_double(value, line);
    } else if (key == "seed") {
      scene.camera.seed = to_uint(value, line, UINT64_MAX);
    } else if (key == "period") {
      scene.period = to_double(value, line);
    } else if (key == "ambient") {
      scene.ambient.level = to_double(value, line);
    } else if (key == "t0") {
      scene.t0 = to_double(value, line);
    } else {
      fail(line, "unknown key '" + std::string(key) + "'");
    }
  }
  if (centered) {
    scene.camera.origin =
        centered_origin(scene.camera.rows, scene.camera.cols, scene.camera.pixel_pitch);
  }
  for (std::size_t i = 0; i < leds.size(); ++i) {
    LedSource led = leds[i].led;
    led.period = scene.period;
    led.frame = encode_frame(leds[i].payload, parity_of(i));
    scene.leds.push_back(led);
  }
  return scene;
}

SceneSpec parse_scene(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_scene(in);
}

SceneSpec load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  return parse_scene(in);
}

void validate(const SceneSpec& scene) {
  validate(scene.camera);
  validate(scene.ambient);
  if (!(scene.period > 0.0)) throw Error(ErrorKind::ConfigError, "period must be > 0");
  if (scene.leds.empty() || scene.leds.size() % 2 != 0) {
    throw Error(ErrorKind::OddLedCount,
                std::to_string(scene.leds.size()) +
                    " LEDs; adjacent LEDs must pair off, so the count must be even and non-zero");
  }
  for (const auto& led : scene.leds) validate(led);
  const double td = scene.pixels_per_bit();
  if (td < 4.0) throw Error(ErrorKind::ConfigError, "T_d = " + std::to_string(td) + " < 4 rows");
  const double frame_rows = static_cast<double>(kFrameBits) * td;
  if (static_cast<double>(scene.camera.rows) < frame_rows) {
    throw Error(ErrorKind::RegionTooShort,
                "capacity: " + std::to_string(scene.camera.rows) + " rows hold less than one " +
                    std::to_string(kFrameBits) + "-bit frame of " +
                    std::to_string(static_cast<long>(std::ceil(frame_rows))) + " rows");
  }
}

FrameImage render(const SceneSpec& scene) {
  validate(scene);
  return render(scene.leds, scene.ambient, scene.camera, scene.capture_time());
}

}  // namespace rsvlc
