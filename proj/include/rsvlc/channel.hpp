// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <span>

#include <Eigen/Dense>

#include "rsvlc/protocol.hpp"

namespace rsvlc {

template <typename Scalar>
struct SurfacePointT {
  Scalar u{};
  Scalar v{};
};

/// Surface coordinates in millimetres.
using SurfacePoint = SurfacePointT<double>;

/// A modulated LED facing a parallel reflecting surface.
///
/// Geometry is in millimetres with (x, y) the foot of the LED on the surface
/// and `h` its height. `m` is the Lambertian order (m = 1 is a 60 degree
/// half-power semi-angle) and `c1` folds the receiver area into the gain
/// A(m+1)/2pi. The LED retransmits `frame` cyclically with bit period
/// `period` seconds.
struct LedSource {
  double x = 0.0;
  double y = 0.0;
  double h = 100.0;
  double m = 1.0;
  double c1 = 1.0;
  BitFrame frame;
  double period = 1e-4;

  Parity parity() const noexcept { return frame.parity; }
};

/// Constant ambient offset added to every pixel.
struct AmbientModel {
  double level = 0.0;
};

/// Throws ConfigError when h <= 0, m < 0, c1 <= 0 or period <= 0.
void validate(const LedSource& led);
void validate(const AmbientModel& ambient);

/// First-order Lambertian radiance on a surface perpendicular to the LED
/// axis: C1 h^2 / (h^2 + dx^2 + dy^2)^2.
template <typename Scalar>
Scalar radiance(Scalar c1, Scalar h, Scalar dx, Scalar dy) {
  const Scalar h2 = h * h;
  const Scalar d2 = h2 + dx * dx + dy * dy;
  return c1 * h2 / (d2 * d2);
}

/// Order-m radiance (C1 / d^2) cos(phi)^(m+1) with cos(phi) = h / d.
template <typename Scalar>
Scalar radiance_general(Scalar c1, Scalar h, Scalar m, Scalar dx, Scalar dy) {
  using std::pow;
  using std::sqrt;
  const Scalar d2 = h * h + dx * dx + dy * dy;
  return c1 / d2 * pow(h / sqrt(d2), m + Scalar(1));
}

/// First-order form; ignores `led.m`.
inline double radiance(const LedSource& led, const SurfacePoint& p) {
  return radiance(led.c1, led.h, p.u - led.x, p.v - led.y);
}

inline double radiance_general(const LedSource& led, const SurfacePoint& p) {
  return radiance_general(led.c1, led.h, led.m, p.u - led.x, p.v - led.y);
}

/// Order-m radiance over a grid of surface coordinates. `u` and `v` must
/// have matching shapes.
template <typename DerivedU, typename DerivedV>
Eigen::Array<typename DerivedU::Scalar, DerivedU::RowsAtCompileTime,
             DerivedU::ColsAtCompileTime>
radiance_field(const LedSource& led, const Eigen::ArrayBase<DerivedU>& u,
               const Eigen::ArrayBase<DerivedV>& v) {
  using Scalar = typename DerivedU::Scalar;
  const Scalar h = static_cast<Scalar>(led.h);
  const auto d2 = ((u - static_cast<Scalar>(led.x)).square() +
                   (v - static_cast<Scalar>(led.y)).square() + h * h)
                      .eval();
  return static_cast<Scalar>(led.c1) / d2 *
         (h / d2.sqrt()).pow(static_cast<Scalar>(led.m + 1.0));
}

/// Received intensity at `p` and time `t`: the sum of each LED's order-m
/// radiance gated by its waveform, plus ambient. Throws ConfigError for an
/// empty LED list.
double composite_intensity(std::span<const LedSource> leds,
                           const SurfacePoint& p, double t,
                           const AmbientModel& ambient);

}  // namespace rsvlc
