// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/channel.hpp"

#include <string>

#include "rsvlc/error.hpp"

namespace rsvlc {

void validate(const LedSource& led) {
  if (!(led.h > 0.0)) throw Error(ErrorKind::ConfigError, "LED height h must be > 0");
  if (!(led.m >= 0.0)) throw Error(ErrorKind::ConfigError, "Lambertian order m must be >= 0");
  if (!(led.c1 > 0.0)) throw Error(ErrorKind::ConfigError, "gain C1 must be > 0");
  if (!(led.period > 0.0)) throw Error(ErrorKind::ConfigError, "modulation period must be > 0");
  if (!std::isfinite(led.x) || !std::isfinite(led.y)) {
    throw Error(ErrorKind::ConfigError, "LED position must be finite");
  }
}

void validate(const AmbientModel& ambient) {
  if (!(ambient.level >= 0.0)) {
    throw Error(ErrorKind::ConfigError, "ambient level must be >= 0");
  }
}

double composite_intensity(std::span<const LedSource> leds,
                           const SurfacePoint& p, double t,
                           const AmbientModel& ambient) {
  if (leds.empty()) throw Error(ErrorKind::ConfigError, "scene has no LEDs");
  double sum = ambient.level;
  for (const auto& led : leds) {
    if (Waveform(led.frame, led.period)(t)) sum += radiance_general(led, p);
  }
  return sum;
}

}  // namespace rsvlc
