// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rsvlc/analysis.hpp"
#include "rsvlc/error.hpp"

using namespace rsvlc;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ConfigError;
}

GeometrySweepPoint with(bool minimum, double e_min, double area_ratio) {
  GeometrySweepPoint p;
  p.has_minimum = minimum;
  p.E_min = e_min;
  p.area_ratio = area_ratio;
  return p;
}

SimParams quick() {
  SimParams p;
  p.draws = 3;
  return p;
}

}  // namespace

TEST_CASE("regime classification") {
  CHECK(classify_regime(with(false, 1.0, 0.0)) == Regime::PointSource);
  CHECK(classify_regime(with(true, 0.97, 0.5)) == Regime::PointSource);
  CHECK(classify_regime(with(true, 0.5, 0.8)) == Regime::Separable);
  CHECK(classify_regime(with(true, 0.5, 1.6)) == Regime::Separable);
  CHECK(classify_regime(with(true, 0.05, 2.5)) == Regime::LowEnergyInterference);
  CHECK(to_string(Regime::PointSource) == "PointSource");
  CHECK(to_string(Regime::Separable) == "Separable");
  CHECK(to_string(Regime::LowEnergyInterference) == "LowEnergyInterference");
}

TEST_CASE("profile measurements") {
  Eigen::ArrayXd v(9);
  v << 0.2, 1.0, 0.8, 0.4, 0.3, 0.5, 0.9, 1.0, 0.1;
  const GeometrySweepPoint p = measure_profile(v, 40);
  CHECK(p.has_minimum);
  CHECK(p.E_min == doctest::Approx(0.3));
  CHECK(p.E_c == doctest::Approx(0.65));
  CHECK(p.energy_ratio == doctest::Approx(1.0 / 0.3));
  CHECK(p.center_col == 44);
  CHECK(p.L_i == 3.0);
  CHECK(p.L_t == 2.0);
  CHECK(p.area_ratio == doctest::Approx(1.5));

  Eigen::ArrayXd hill(7);
  hill << 0.1, 0.5, 0.9, 1.0, 0.9, 0.5, 0.1;
  const GeometrySweepPoint q = measure_profile(hill, 0);
  CHECK_FALSE(q.has_minimum);
  CHECK(q.E_min == 1.0);
  CHECK(q.L_i == 7.0);
  CHECK(std::isinf(q.area_ratio));
  CHECK(classify_regime(q) == Regime::PointSource);
  CHECK_FALSE(measure_profile(Eigen::ArrayXd::Ones(2), 0).has_minimum);
}

TEST_CASE("measurement invariants") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::ArrayXd v(5 + trial % 60);
    for (auto& x : v) x = u(rng);
    v /= v.maxCoeff();
    const GeometrySweepPoint p = measure_profile(v, 0);
    CHECK(p.E_min >= 0.0);
    CHECK(p.E_min <= p.E_c);
    CHECK(p.E_c <= 1.0);
    CHECK(p.L_i >= 1.0);
    CHECK(p.L_i <= static_cast<double>(v.size()));
    if (p.has_minimum) {
      CHECK(v(p.center_col) == doctest::Approx(p.E_min));
      CHECK(p.L_t <= static_cast<double>(v.size()));
    }
  }
}

TEST_CASE("sweep points") {
  SimParams params = quick();
  SUBCASE("coincident LEDs act as one") {
    const GeometrySweepPoint p = sweep_point(100.0, 0.0, params);
    CHECK(std::isinf(p.ratio));
    CHECK(p.regime == Regime::PointSource);
  }
  SUBCASE("ratio 2 separates with a centred dip") {
    const GeometrySweepPoint p = sweep_point(100.0, 50.0, SimParams{});
    CHECK(p.ratio == 2.0);
    CHECK(p.regime == Regime::Separable);
    CHECK(p.E_min < 0.95);
    CHECK(std::abs(static_cast<double>(p.center_col) - p.midpoint_col) <= params.pixels_per_bit);
  }
  SUBCASE("errors") {
    CHECK(kind_of([&] { sweep_point(0.0, 10.0, params); }) == ErrorKind::ConfigError);
    CHECK(kind_of([&] { sweep_point(10.0, -1.0, params); }) == ErrorKind::ConfigError);
    params.draws = 0;
    CHECK(kind_of([&] { sweep_point(10.0, 10.0, params); }) == ErrorKind::ConfigError);
    params = quick();
    params.pixels_per_bit = 3.0;
    CHECK(kind_of([&] { validate(params); }) == ErrorKind::ConfigError);
  }
}

TEST_CASE("regimes do not depend on the payload draw") {
  struct Case {
    double h, d, m;
    Regime expect;
  };
  const Case cases[] = {
      {100.0, 20.0, 1.0, Regime::PointSource},
      {100.0, 50.0, 1.0, Regime::Separable},
      {100.0, 100.0, 1.0, Regime::Separable},
      {70.0, 100.0, 1.0, Regime::Separable},
      {30.0, 100.0, 0.0, Regime::LowEnergyInterference},
  };
  for (const Case& c : cases) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SimParams params;
      params.m = c.m;
      params.seed = seed;
      const GeometrySweepPoint p = sweep_point(c.h, c.d, params);
      CHECK_MESSAGE(p.regime == c.expect, "h=", c.h, " d=", c.d, " seed=", seed);
    }
  }
}

TEST_CASE("grid sweep") {
  const SimParams params = quick();
  const std::vector<double> hs{40.0, 80.0};
  const std::vector<double> ds{20.0, 60.0};
  const auto grid = sweep_grid(hs, ds, params);
  REQUIRE(grid.size() == 4);
  CHECK(grid[0].h == 40.0);
  CHECK(grid[0].d_xy == 20.0);
  CHECK(grid[1].d_xy == 60.0);
  CHECK(grid[2].h == 80.0);

  // Order of the axes only reorders the output.
  const auto swapped = sweep_grid(std::vector<double>{80.0, 40.0}, ds, params);
  CHECK(swapped[0].E_min == grid[2].E_min);
  CHECK(swapped[3].E_min == grid[1].E_min);

  // Raising the LEDs at fixed spacing fills the dip.
  CHECK(grid[3].E_min >= grid[1].E_min);

  const auto counts = regime_counts(grid);
  CHECK(counts[0] + counts[1] + counts[2] == 4);

  CHECK(kind_of([&] { sweep_grid(std::vector<double>{}, ds, params); }) ==
        ErrorKind::ConfigError);

  std::ostringstream a;
  std::ostringstream b;
  write_sweep_csv(a, grid);
  write_sweep_csv(b, sweep_grid(hs, ds, params));
  CHECK(a.str() == b.str());
  const std::string csv = a.str();
  CHECK(csv.rfind("h,d_xy,ratio,E_min,energy_ratio,L_t,L_i,area_ratio,regime\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
