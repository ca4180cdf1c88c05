// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cstdio>
#include <string>

#include <Eigen/Dense>

namespace rsvlc {

/// Centred moving average of odd `width`; windows shrink at the ends.
template <typename Derived>
Eigen::Array<typename Derived::Scalar, Eigen::Dynamic, 1> moving_average(
    const Eigen::ArrayBase<Derived>& x, Eigen::Index width) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.size();
  const Eigen::Index half = std::max<Eigen::Index>(width, 1) / 2;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> prefix(n + 1);
  prefix(0) = Scalar(0);
  for (Eigen::Index i = 0; i < n; ++i) prefix(i + 1) = prefix(i) + x(i);
  Eigen::Array<Scalar, Eigen::Dynamic, 1> out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, i - half);
    const Eigen::Index hi = std::min<Eigen::Index>(n, i + half + 1);
    out(i) = (prefix(hi) - prefix(lo)) / static_cast<Scalar>(hi - lo);
  }
  return out;
}

/// Round-trippable, locale-independent rendering used by every CSV writer.
inline std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

}  // namespace rsvlc
