// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <string>

#include "rsvlc/error.hpp"
#include "rsvlc/receiver.hpp"
#include "rsvlc/scene.hpp"

using namespace rsvlc;

namespace {

const std::filesystem::path kScenes = RSVLC_SCENES_DIR;

std::string error_text(std::string_view scene) {
  try {
    parse_scene(scene);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    return e.what();
  }
  FAIL("no error thrown");
  return {};
}

ErrorKind validate_kind(const SceneSpec& s) {
  try {
    validate(s);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::ParseError;
}

constexpr std::string_view kPair = R"(# comment line
rows = 300
cols = 200   # trailing comment
row_period = 1e-5
pixel_pitch = 0.5
period = 1e-4
ambient = 2e-6
seed = 42
led: x=-10 y=1.5 h=80 m=2 c1=3 payload=0x4D
led: x=10 h=80 payload=200
)";

}  // namespace

TEST_CASE("scene parsing") {
  const SceneSpec s = parse_scene(kPair);
  CHECK(s.camera.rows == 300);
  CHECK(s.camera.cols == 200);
  CHECK(s.camera.row_period == 1e-5);
  CHECK(s.camera.seed == 42);
  CHECK(s.ambient.level == 2e-6);
  CHECK(s.pixels_per_bit() == doctest::Approx(10.0));
  CHECK(s.camera.origin.u == doctest::Approx(-49.75));
  CHECK(s.camera.origin.v == doctest::Approx(-74.75));
  REQUIRE(s.leds.size() == 2);
  CHECK(s.leds[0].x == -10.0);
  CHECK(s.leds[0].y == 1.5);
  CHECK(s.leds[0].m == 2.0);
  CHECK(s.leds[0].c1 == 3.0);
  CHECK(s.leds[0].frame.parity == Parity::Even);
  CHECK(s.leds[1].frame.parity == Parity::Odd);
  CHECK(s.leds[1].y == 0.0);
  CHECK(s.leds[1].m == 1.0);
  CHECK(s.leds[1].period == 1e-4);
  CHECK(s.payloads() == std::vector<std::uint8_t>{0x4d, 200});
  CHECK_FALSE(s.t0.has_value());
  CHECK(s.capture_time() == s.capture_time());
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("explicit origin and capture time") {
  const SceneSpec s = parse_scene("origin = 1.5, -2\nt0 = 0.002\nled: x=0 payload=1\n");
  CHECK(s.camera.origin.u == 1.5);
  CHECK(s.camera.origin.v == -2.0);
  CHECK(s.capture_time() == 0.002);
}

TEST_CASE("scene errors name the line") {
  CHECK(error_text("rows = 10\nfoo = 3\n").starts_with("ParseError: line 2: "));
  CHECK(error_text("\n\nrows = ten\n").starts_with("ParseError: line 3: "));
  CHECK(error_text("led: x=1\n").starts_with("ParseError: line 1: "));
  CHECK(error_text("led: x=1 payload=256\n").starts_with("ParseError: line 1: "));
  CHECK(error_text("led: x=1 z=2 payload=1\n").starts_with("ParseError: line 1: "));
  CHECK(error_text("led: x payload=1\n").starts_with("ParseError: line 1: "));
  CHECK(error_text("rows 10\n").starts_with("ParseError: line 1: "));
  CHECK(error_text("origin = 1\n").starts_with("ParseError: line 1: "));
  CHECK_THROWS_AS(load_scene(kScenes / "missing.scene"), Error);
}

TEST_CASE("scene validation") {
  SceneSpec s = parse_scene(kPair);
  s.leds.pop_back();
  CHECK(validate_kind(s) == ErrorKind::OddLedCount);
  s.leds.clear();
  CHECK(validate_kind(s) == ErrorKind::OddLedCount);

  s = parse_scene(kPair);
  s.camera.rows = 279;
  CHECK(validate_kind(s) == ErrorKind::RegionTooShort);
  s.camera.rows = 280;
  CHECK_NOTHROW(validate(s));

  s = parse_scene(kPair);
  s.camera.row_period = 3e-5;
  CHECK(validate_kind(s) == ErrorKind::ConfigError);

  s = parse_scene(kPair);
  s.leds[1].h = 0.0;
  CHECK(validate_kind(s) == ErrorKind::ConfigError);

  CHECK(validate_kind(load_scene(kScenes / "three_led.scene")) == ErrorKind::OddLedCount);
  CHECK(validate_kind(load_scene(kScenes / "short_frame.scene")) == ErrorKind::RegionTooShort);
}

TEST_CASE("bundled scenes decode") {
  for (const char* name : {"two_led.scene", "two_led_ambient.scene", "four_led.scene"}) {
    CAPTURE(name);
    const SceneSpec s = load_scene(kScenes / name);
    REQUIRE_NOTHROW(validate(s));
    const FrameImage img = render(s);
    CHECK(img.rows() == s.camera.rows);
    CHECK(img == render(s));
    ReceiverConfig cfg;
    cfg.pixels_per_bit = s.pixels_per_bit();
    CHECK(decode_message(img, cfg).bytes == s.payloads());
  }
}
