// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "rsvlc/detector.hpp"
#include "rsvlc/error.hpp"

using namespace rsvlc;
using rsvlc::testing::Bench;

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

EnergyProfile profile_of(std::initializer_list<double> values) {
  Eigen::ArrayXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return make_profile(v, 100, 1);
}

// Square wave of the given half period in rows, constant across columns.
FrameImage stripes(Eigen::Index rows, Eigen::Index cols, Eigen::Index half, double lo,
                   double hi) {
  ImageArray<double> px(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) px.row(r).setConstant((r / half) % 2 ? lo : hi);
  return FrameImage(px);
}

}  // namespace

TEST_CASE("blur keeps constants and mass") {
  const ImageArray<double> flat = ImageArray<double>::Constant(20, 30, 0.4);
  const ImageArray<double> out = gaussian_blur(flat, 2.5);
  CHECK((out - 0.4).abs().maxCoeff() < 1e-12);
  ImageArray<double> spot = ImageArray<double>::Zero(41, 41);
  spot(20, 20) = 1.0;
  const ImageArray<double> b = gaussian_blur(spot, 3.0);
  CHECK(b.sum() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(b(20, 20) == b.maxCoeff());
  CHECK(b(18, 20) == doctest::Approx(b(22, 20)));
  CHECK(b(20, 17) == doctest::Approx(b(17, 20)));
}

TEST_CASE("lit area detection") {
  SUBCASE("black frame") {
    const FrameImage black(64, 64, 0.0);
    CHECK(kind_of([&] { find_lit_areas(black, 8.0); }) == ErrorKind::NoLightSource);
  }
  SUBCASE("disc") {
    ImageArray<double> px = ImageArray<double>::Zero(100, 120);
    for (int r = 0; r < 100; ++r) {
      for (int c = 0; c < 120; ++c) {
        if ((r - 40) * (r - 40) + (c - 70) * (c - 70) <= 25 * 25) px(r, c) = 0.9;
      }
    }
    const auto areas = find_lit_areas(FrameImage(px), 0.5, 0.25, 50);
    REQUIRE(areas.size() == 1);
    CHECK(areas[0].row_min == doctest::Approx(15).epsilon(0.1));
    CHECK(areas[0].row_max == doctest::Approx(65).epsilon(0.05));
    CHECK(areas[0].col_min == doctest::Approx(45).epsilon(0.1));
    CHECK(areas[0].col_max == doctest::Approx(95).epsilon(0.05));
    CHECK(areas[0].pixel_count > 1800);
    CHECK(areas[0].pixel_count < 2100);
  }
  SUBCASE("two separated blobs sorted by size") {
    ImageArray<double> px = ImageArray<double>::Zero(60, 200);
    px.block(10, 10, 40, 40).setConstant(1.0);
    px.block(10, 120, 30, 60).setConstant(1.0);
    const auto areas = find_lit_areas(FrameImage(px), 0.5, 0.25, 10);
    REQUIRE(areas.size() == 2);
    CHECK(areas[0].pixel_count >= areas[1].pixel_count);
  }
  SUBCASE("overlapping footprints merge") {
    Bench b;
    const FrameImage img = render(testing::pair_scene(b, 50.0, 0x52, 0x53));
    const auto areas = find_lit_areas(img, 8.0);
    REQUIRE(areas.size() == 1);
    CHECK(areas[0].col_min < 412);
    CHECK(areas[0].col_max > 612);
    CHECK(areas[0].mask.rows() == areas[0].row_span());
  }
  SUBCASE("bad parameters") {
    const FrameImage img(16, 16, 0.5);
    CHECK(kind_of([&] { find_lit_areas(img, 1.0, 0.0, 1); }) == ErrorKind::ConfigError);
    CHECK(kind_of([&] { find_lit_areas(img, 1.0, 1.5, 1); }) == ErrorKind::ConfigError);
  }
}

TEST_CASE("column energy") {
  CHECK(energy_window(8.0) == 24);
  CHECK(energy_window(12.5) == 38);
  CHECK(energy_window(10.0) == 30);

  const FrameImage flat(96, 8, 0.7);
  CHECK(column_energy(flat, LitArea::whole(flat), 3, 8.0) == doctest::Approx(0.0));

  // Half period 12 rows inside a 24-row window: half the samples at each
  // level, so each window carries 24 * (amplitude / 2)^2.
  const FrameImage sq = stripes(96, 4, 12, 0.2, 0.8);
  const LitArea all = LitArea::whole(sq);
  const Eigen::ArrayXd w = window_energies(sq, all, 1, 8.0);
  REQUIRE(w.size() == 4);
  CHECK((w - 24 * 0.09).abs().maxCoeff() < 1e-12);
  CHECK(column_energy(sq, all, 1, 8.0, WindowStatistic::Mean) == doctest::Approx(2.16));
  CHECK(column_energy(sq, all, 1, 8.0, WindowStatistic::Floor) == doctest::Approx(2.16));
  CHECK(column_energies(sq, all, 8.0).size() == 4);

  // Floor picks the quiet window.
  ImageArray<double> px = sq.pixels();
  px.block(24, 0, 24, 4).setConstant(0.5);
  const FrameImage partly(px);
  CHECK(column_energy(partly, all, 0, 8.0, WindowStatistic::Floor) == doctest::Approx(0.0));
  CHECK(column_energy(partly, all, 0, 8.0, WindowStatistic::Mean) ==
        doctest::Approx(3 * 2.16 / 4));

  const FrameImage shallow(20, 4, 0.5);
  CHECK(kind_of([&] { column_energy(shallow, LitArea::whole(shallow), 0, 8.0); }) ==
        ErrorKind::WindowTooLarge);
  CHECK(kind_of([&] { column_energy(sq, all, 4, 8.0); }) == ErrorKind::OutOfRange);
}

TEST_CASE("energy profile") {
  Eigen::ArrayXd raw(5);
  raw << 1, 4, 2, 8, 6;
  const EnergyProfile p = make_profile(raw, 10, 1);
  CHECK(p.raw_peak == 8.0);
  CHECK(p.values.maxCoeff() == 1.0);
  CHECK(p.values.minCoeff() >= 0.0);
  CHECK(p.at_column(11) == 0.5);
  CHECK(p.column(4) == 14);

  const EnergyProfile zero = make_profile(Eigen::ArrayXd::Zero(6), 0, 3);
  CHECK((zero.values == 0.0).all());

  CHECK(kind_of([&] { make_profile(raw, 0, 2); }) == ErrorKind::ConfigError);
  CHECK(kind_of([&] { make_profile(raw, 0, 0); }) == ErrorKind::ConfigError);
  CHECK(default_smoothing(8.0) == 9);
  CHECK(default_smoothing(12.5) == 13);
  CHECK(default_smoothing(0.2) == 1);
}

TEST_CASE("profile bounds property") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::ArrayXd raw(40);
    for (auto& x : raw) x = u(rng);
    const EnergyProfile p = make_profile(raw, 0, 2 * (trial % 4) + 1);
    CHECK(p.values.minCoeff() >= 0.0);
    CHECK(p.values.maxCoeff() == doctest::Approx(1.0));
  }
}

TEST_CASE("local extrema") {
  Eigen::ArrayXd v(9);
  v << 3, 1, 1, 1, 4, 2, 5, 5, 0;
  CHECK(local_minima(v) == std::vector<Eigen::Index>{2, 5});
  CHECK(local_maxima(v) == std::vector<Eigen::Index>{4, 6});
  Eigen::ArrayXd mono = Eigen::ArrayXd::LinSpaced(10, 0, 1);
  CHECK(local_minima(mono).empty());
  CHECK(local_maxima(mono).empty());
}

TEST_CASE("region split") {
  SUBCASE("V shape") {
    const RegionMap map = split_regions(profile_of({0.6, 1.0, 0.7, 0.3, 0.1, 0.4, 0.9, 0.8}), 0.5);
    REQUIRE(map.centers.size() == 1);
    CHECK(map.centers[0] == 104);
    REQUIRE(map.regions.size() == 2);
    CHECK(map.regions[0] == ColumnRange{100, 103});
    CHECK(map.regions[1] == ColumnRange{105, 107});
    CHECK(map.parity_hint == std::vector<Parity>{Parity::Even, Parity::Odd});
  }
  SUBCASE("monotone profile has no center") {
    const RegionMap map = split_regions(profile_of({0.1, 0.3, 0.5, 0.8, 1.0}), 0.5);
    CHECK(map.centers.empty());
    REQUIRE(map.regions.size() == 1);
    CHECK(map.regions[0] == ColumnRange{100, 104});
  }
  SUBCASE("shallow or one-sided dips are ignored") {
    CHECK(split_regions(profile_of({1.0, 0.45, 0.5, 0.9}), 0.5).centers.size() == 1);
    CHECK(split_regions(profile_of({1.0, 0.6, 0.9}), 0.5).centers.empty());
    CHECK(split_regions(profile_of({0.3, 0.2, 1.0}), 0.5).centers.empty());
  }
  SUBCASE("parameters") {
    const EnergyProfile p = profile_of({1.0, 0.2, 1.0});
    CHECK(kind_of([&] { split_regions(p, 0.0); }) == ErrorKind::ConfigError);
    CHECK(kind_of([&] { split_regions(p, 1.0); }) == ErrorKind::ConfigError);
    CHECK(kind_of([&] { split_regions(p, 0.5, -0.1); }) == ErrorKind::ConfigError);
    CHECK(default_prominence(0.5) == doctest::Approx(0.15));
  }
}

TEST_CASE("regions tile the profile") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    Eigen::ArrayXd raw(30 + trial % 50);
    for (auto& x : raw) x = u(rng);
    const EnergyProfile p = make_profile(raw, trial, 3);
    const RegionMap map = split_regions(p, 0.5);
    REQUIRE(map.regions.size() == map.centers.size() + 1);
    REQUIRE(map.parity_hint.size() == map.regions.size());
    Eigen::Index next = p.first_col;
    for (std::size_t k = 0; k < map.regions.size(); ++k) {
      CHECK(map.regions[k].first == next);
      CHECK_FALSE(map.regions[k].empty());
      CHECK(map.parity_hint[k] == parity_of(k));
      next = map.regions[k].last + 1;
      if (k < map.centers.size()) {
        CHECK(map.centers[k] == next);
        CHECK(p.at_column(map.centers[k]) < 0.5);
        ++next;
      }
    }
    CHECK(next == p.column(p.size()));
  }
}

TEST_CASE("rendered pairs") {
  Bench b;
  SUBCASE("separable pair has one dip midway") {
    const FrameImage img = render(testing::pair_scene(b, 50.0, 0x52, 0x53));
    const LitArea area = find_lit_areas(img, 8.0).front();
    const EnergyProfile p = energy_profile(img, area, 8.0, default_smoothing(8.0),
                                           WindowStatistic::Floor);
    const RegionMap map = split_regions(p, 0.5);
    REQUIRE(map.centers.size() == 1);
    const RegionMap fine = refine_centers(img, area, p, map, 8.0);
    REQUIRE(fine.centers.size() == 1);
    CHECK(std::abs(fine.centers[0] - 511.5) <= 8.0);
    CHECK(fine.regions.size() == 2);
  }
  SUBCASE("single LED has no dip") {
    const SceneSpec s = testing::bench_scene(b, {0.0}, {0x5a});
    const FrameImage img = render(s.leds, s.ambient, s.camera, 0.0);
    const LitArea area = find_lit_areas(img, 8.0).front();
    const EnergyProfile p = energy_profile(img, area, 8.0, default_smoothing(8.0));
    CHECK(split_regions(p, 0.5).centers.empty());
  }
  SUBCASE("noise lifts the dip") {
    double clean = 0.0;
    double noisy = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      for (double sigma : {0.0, 0.03}) {
        b.noise = sigma;
        b.seed = seed;
        const FrameImage img = render(testing::pair_scene(b, 50.0, 0x3c, 0xc3));
        const LitArea area = find_lit_areas(img, 8.0).front();
        const EnergyProfile p = energy_profile(img, area, 8.0, 9);
        (sigma > 0 ? noisy : clean) += p.at_column(512);
      }
    }
    CHECK(noisy > clean);
  }
}

TEST_CASE("four LEDs give four regions") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const FrameImage img = render(testing::quad_scene(seed, 0.0, {0x10, 0x20, 0x30, 0x40}));
    const LitArea area = find_lit_areas(img, 8.0).front();
    const EnergyProfile p = energy_profile(img, area, 8.0, default_smoothing(8.0),
                                           WindowStatistic::Floor);
    const RegionMap map = refine_centers(img, area, p, split_regions(p, 0.5), 8.0);
    REQUIRE(map.centers.size() == 3);
    // LED midpoints sit at -140, 0 and 140 mm, i.e. columns 231.5, 511.5, 791.5.
    CHECK(std::abs(map.centers[0] - 231.5) <= 8.0);
    CHECK(std::abs(map.centers[1] - 511.5) <= 8.0);
    CHECK(std::abs(map.centers[2] - 791.5) <= 8.0);
  }
}

TEST_CASE("energy csv") {
  std::ostringstream out;
  write_energy_csv(out, profile_of({0.5, 1.0}));
  CHECK(out.str() == "col_index,energy\n100,0.5\n101,1\n");
}
