// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

#include "rsvlc/acceptance.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "rsvlc/analysis.hpp"
#include "rsvlc/camera.hpp"
#include "rsvlc/channel.hpp"
#include "rsvlc/demod.hpp"
#include "rsvlc/detector.hpp"
#include "rsvlc/error.hpp"
#include "rsvlc/image_io.hpp"
#include "rsvlc/protocol.hpp"
#include "rsvlc/receiver.hpp"
#include "rsvlc/scene.hpp"

namespace rsvlc {

namespace {

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

CriterionResult timed(int id, std::string title,
                      const std::function<bool(std::string&)>& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  const auto start = std::chrono::steady_clock::now();
  try {
    r.pass = body(r.detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("unexpected error: ") + e.what();
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Medium-height test bench: h = 100 mm, LEDs 50 mm apart, T_d = 8 rows.
CameraConfig bench_camera(Eigen::Index cols = 1024) {
  CameraConfig cam;
  cam.rows = 512;
  cam.cols = cols;
  cam.row_period = 1.25e-5;
  cam.pixel_pitch = 0.25;
  cam.origin = centered_origin(cam.rows, cam.cols, cam.pixel_pitch);
  return cam;
}

constexpr double kBenchPeriod = 1e-4;

std::array<LedSource, 2> bench_leds(double h, double d_xy, std::uint8_t a, std::uint8_t b) {
  std::array<LedSource, 2> leds;
  const std::array<std::uint8_t, 2> payload{a, b};
  for (std::size_t i = 0; i < 2; ++i) {
    leds[i].x = (i == 0 ? -0.5 : 0.5) * d_xy;
    leds[i].h = h;
    leds[i].period = kBenchPeriod;
    leds[i].frame = encode_frame(payload[i], parity_of(i));
  }
  return leds;
}

// Cyclic clean thresholded rendering of a frame: sample r lies in bit
// floor((r + offset) / td).
Signal1D square_fixture(const BitFrame& frame, double td, double offset, Eigen::Index n) {
  Signal1D s(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto k = static_cast<long>(std::floor((static_cast<double>(r) + offset) / td));
    s(r) = frame.bits[static_cast<std::size_t>(k % static_cast<long>(kFrameBits))] ? 0.5 : -0.5;
  }
  return s;
}

}  // namespace

CriterionResult check_frame_structure(const AcceptanceOptions&) {
  return timed(1, "frame structure", [](std::string& detail) {
    std::size_t checked = 0;
    for (int b = 0; b < 256; ++b) {
      for (Parity p : {Parity::Even, Parity::Odd}) {
        const BitFrame f = encode_frame(static_cast<std::uint8_t>(b), p);
        const auto pre = preamble_bits(p);
        if (f.bits.size() != 28) return false;
        for (std::size_t k = 0; k < 8; ++k) {
          if (f.bits[3 * k] != pre[0] || f.bits[3 * k + 1] != pre[1]) return false;
          if (f.bits[3 * k + 2] != ((b >> (7 - k)) & 1)) return false;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          if (f.bits[24 + k] != pre[k % 2]) return false;
        }
        if (decode_frame(f.bits, p) != b) return false;
        ++checked;
      }
    }
    detail = fmt("%zu frames of 28 bits", checked);
    return checked == 512;
  });
}

CriterionResult check_orthogonality(const AcceptanceOptions& opt) {
  return timed(2, "orthogonality", [&](std::string& detail) {
    // Analytic: every payload pair, every preamble and end-marker slot.
    const double period = kBenchPeriod;
    for (int a = 0; a < 256; ++a) {
      const Waveform even(encode_frame(static_cast<std::uint8_t>(a), Parity::Even), period);
      for (int b = 0; b < 256; ++b) {
        const Waveform odd(encode_frame(static_cast<std::uint8_t>(b), Parity::Odd), period);
        for (std::size_t k = 0; k < kFrameBits; ++k) {
          if (k < 24 && k % 3 == 2) continue;
          const double t = (static_cast<double>(k) + 0.5) * period;
          if (even(t) + odd(t) != 1) return false;
        }
      }
    }
    // Physical: on the midpoint column both LEDs deliver the same radiance,
    // so during preamble rows the pixel is exactly one LED's worth. Dividing
    // by that radiance must give the same value on every such row.
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> byte(0, 255);
    const CameraConfig cam = bench_camera(1023);
    const Eigen::Index mid = (cam.cols - 1) / 2;
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const auto leds = bench_leds(100.0, 50.0, static_cast<std::uint8_t>(byte(rng)),
                                   static_cast<std::uint8_t>(byte(rng)));
      const double t0 = default_capture_time(leds, cam) + trial * 3.7e-5;
      const FrameImage img = render(leds, AmbientModel{}, cam, t0);
      const Waveform clock(leds[0].frame, kBenchPeriod);
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (Eigen::Index r = 0; r < cam.rows; ++r) {
        const std::size_t k = clock.slot(t0 + static_cast<double>(r) * cam.row_period);
        if (k < 24 && k % 3 == 2) continue;
        const double q = img(r, mid) / radiance_general(leds[0], point(r, mid, cam));
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
      worst = std::max(worst, (hi - lo) / hi);
    }
    detail = fmt("65536 pairs exact, midpoint preamble contrast %.3g", worst);
    return worst < 1e-9;
  });
}

CriterionResult check_lambertian(const AcceptanceOptions& opt) {
  return timed(3, "Lambertian consistency", [&](std::string& detail) {
    std::mt19937_64 rng(opt.seed + 3);
    std::uniform_real_distribution<double> gain(0.1, 10.0);
    std::uniform_real_distribution<double> height(1.0, 1000.0);
    std::uniform_real_distribution<double> offset(-1000.0, 1000.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double c1 = gain(rng);
      const double h = height(rng);
      const double dx = offset(rng);
      const double dy = offset(rng);
      const double s = h * h + dx * dx + dy * dy;
      const double closed = c1 * h * h / (s * s);
      const double general = radiance_general(c1, h, 1.0, dx, dy);
      worst = std::max(worst, std::abs(general - closed) / closed);
    }
    detail = fmt("max relative error %.3g over 1000 geometries", worst);
    return worst < 1e-12;
  });
}

CriterionResult check_round_trip(const AcceptanceOptions& opt) {
  return timed(4, "end-to-end round trip", [&](std::string& detail) {
    std::mt19937_64 rng(opt.seed + 4);
    std::uniform_int_distribution<int> byte(0, 255);
    const CameraConfig cam = bench_camera();
    std::uniform_real_distribution<double> phase(0.0, 28.0 * kBenchPeriod);
    ReceiverConfig rx;
    rx.pixels_per_bit = cam.pixels_per_bit(kBenchPeriod);
    std::size_t bit_errors = 0;
    std::size_t failures = 0;
    std::string first_failure;
    for (int trial = 0; trial < 100; ++trial) {
      const std::array<std::uint8_t, 2> sent{static_cast<std::uint8_t>(byte(rng)),
                                             static_cast<std::uint8_t>(byte(rng))};
      const auto leds = bench_leds(100.0, 50.0, sent[0], sent[1]);
      const FrameImage img = render(leds, AmbientModel{}, cam, phase(rng));
      try {
        const DecodeResult got = decode_message(img, rx);
        for (std::size_t i = 0; i < 2; ++i) {
          bit_errors += static_cast<std::size_t>(std::popcount(
              static_cast<unsigned>(got.bytes.at(i) ^ sent[i])));
        }
      } catch (const Error& e) {
        ++failures;
        bit_errors += 16;
        if (first_failure.empty()) first_failure = fmt("; trial %d: %s", trial, e.what());
      }
    }
    detail = fmt("100 frames at %lldx%lld, %zu decode failures, BER %.4g",
                 static_cast<long long>(cam.rows), static_cast<long long>(cam.cols), failures,
                 static_cast<double>(bit_errors) / 1600.0) +
             first_failure;
    return bit_errors == 0;
  });
}

CriterionResult check_localization(const AcceptanceOptions& opt) {
  return timed(5, "interference localization", [&](std::string& detail) {
    CameraConfig cam = bench_camera();
    const double td = cam.pixels_per_bit(kBenchPeriod);
    const double midpoint = -cam.origin.u / cam.pixel_pitch;
    std::uniform_int_distribution<int> byte(0, 255);
    double worst = 0.0;
    std::size_t misses = 0;
    for (double sigma : {0.0, 0.01, 0.02}) {
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::mt19937_64 rng(opt.seed + 5 + seed);
        cam.noise_sigma = sigma;
        cam.seed = seed;
        const auto leds = bench_leds(100.0, 50.0, static_cast<std::uint8_t>(byte(rng)),
                                     static_cast<std::uint8_t>(byte(rng)));
        const FrameImage img = render(leds, AmbientModel{}, cam);
        const LitArea area = find_lit_areas(img, td).front();
        const EnergyProfile profile = energy_profile(img, area, td, default_smoothing(td),
                                                     WindowStatistic::Floor);
        const RegionMap map = refine_centers(img, area, profile, split_regions(profile, 0.5), td);
        if (map.centers.size() != 1) {
          ++misses;
          continue;
        }
        worst = std::max(worst, std::abs(static_cast<double>(map.centers[0]) - midpoint));
      }
    }
    detail = fmt("60 frames (sigma 0..2%%), %zu without a single centre, max offset %.1f "
                 "columns (T_d = %.0f)",
                 misses, worst, td);
    return misses == 0 && worst <= td;
  });
}

CriterionResult check_regimes(const AcceptanceOptions& opt) {
  return timed(6, "regime reproduction", [&](std::string& detail) {
    SimParams params;
    params.seed = opt.seed + 6;
    const GeometrySweepPoint high = sweep_point(100.0, 20.0, params);
    const GeometrySweepPoint medium = sweep_point(100.0, 50.0, params);
    SimParams wide = params;
    wide.m = 0.0;
    const GeometrySweepPoint low = sweep_point(30.0, 100.0, wide);

    // The medium scene must also split into two regions in the receiver.
    const CameraConfig cam = bench_camera();
    const double td = cam.pixels_per_bit(kBenchPeriod);
    const auto leds = bench_leds(100.0, 50.0, 0x5a, 0xc3);
    const FrameImage img = render(leds, AmbientModel{}, cam);
    const LitArea area = find_lit_areas(img, td).front();
    const RegionMap map = split_regions(
        energy_profile(img, area, td, default_smoothing(td), WindowStatistic::Floor), 0.5);

    detail = fmt("ratio 5: %s E_min %.3f; ratio 2: %s E_min %.3f, %zu regions %zu centre; "
                 "ratio 0.3 m=0: %s area ratio %.2f",
                 std::string(to_string(high.regime)).c_str(), high.E_min,
                 std::string(to_string(medium.regime)).c_str(), medium.E_min,
                 map.regions.size(), map.centers.size(),
                 std::string(to_string(low.regime)).c_str(), low.area_ratio);
    return high.regime == Regime::PointSource && medium.regime == Regime::Separable &&
           map.regions.size() == 2 && map.centers.size() == 1 &&
           low.regime == Regime::LowEnergyInterference && low.area_ratio > 1.0;
  });
}

CriterionResult check_monotone(const AcceptanceOptions& opt) {
  return timed(7, "monotone detectability", [&](std::string& detail) {
    SimParams params;
    params.seed = opt.seed + 7;
    const std::array<double, 1> h{50.0};
    const std::vector<double> d{10.0, 12.5, 50.0 / 3.0, 20.0, 25.0, 100.0 / 3.0, 40.0,
                                50.0, 62.5, 80.0, 100.0, 125.0, 500.0 / 3.0};
    const auto points = sweep_grid(h, d, params);
    bool monotone = true;
    bool band = true;
    std::size_t pre_case3 = 0;
    double previous = 1.0;
    for (const auto& p : points) {
      if (p.ratio >= 0.5 - 1e-12 && p.ratio <= 2.0 + 1e-12 && p.regime != Regime::Separable) {
        band = false;
      }
    }
    for (const auto& p : points) {
      if (p.regime == Regime::LowEnergyInterference) break;
      if (p.E_min > previous) monotone = false;
      previous = p.E_min;
      ++pre_case3;
    }
    std::ostringstream trend;
    for (std::size_t i = 0; i < pre_case3; ++i) {
      trend << (i ? " " : "") << fmt("%.3f", points[i].E_min);
    }
    detail = "h=50 E_min " + trend.str() + (monotone ? " non-increasing" : " NOT monotone") +
             (band ? "; band 0.5..2 Separable" : "; band 0.5..2 has non-Separable points");
    return monotone && band && pre_case3 >= 3;
  });
}

CriterionResult check_sync(const AcceptanceOptions& opt) {
  return timed(8, "rotation-invariant sync", [&](std::string& detail) {
    for (int b = 0; b < 256; ++b) {
      for (Parity p : {Parity::Even, Parity::Odd}) {
        const BitFrame f = encode_frame(static_cast<std::uint8_t>(b), p);
        Bits stream(2 * kFrameBits);
        for (std::size_t k = 0; k < kFrameBits; ++k) {
          for (std::size_t i = 0; i < stream.size(); ++i) {
            stream[i] = f.bits[(i + k) % kFrameBits];
          }
          if (parse_stream(stream, p) != b) return false;
          if (parse_stream(std::span(stream).first(kFrameBits), p) != b) return false;
        }
      }
    }
    std::mt19937_64 rng(opt.seed + 8);
    std::bernoulli_distribution coin(0.5);
    const int trials = 10000;
    int no_sync = 0;
    int mismatch = 0;
    int accepted = 0;
    Bits stream(2 * kFrameBits);
    for (int t = 0; t < trials; ++t) {
      for (auto& bit : stream) bit = coin(rng) ? 1 : 0;
      try {
        parse_stream(stream, Parity::Even);
        ++accepted;
      } catch (const Error& e) {
        (e.kind() == ErrorKind::SyncNotFound ? no_sync : mismatch) += 1;
      }
    }
    const double false_sync = static_cast<double>(accepted) / trials;
    detail = fmt("512x28 rotations exact; random 56-bit streams: SyncNotFound %.2f%%, "
                 "PreambleMismatch %.2f%%, false sync %.2f%%",
                 100.0 * no_sync / trials, 100.0 * mismatch / trials, 100.0 * false_sync);
    return false_sync < 0.05;
  });
}

CriterionResult check_clock(const AcceptanceOptions& opt) {
  return timed(9, "clock robustness", [&](std::string& detail) {
    std::mt19937_64 rng(opt.seed + 9);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    int fixtures = 0;
    for (double td : {8.0, 10.0, 12.5, 20.0, 33.3}) {
      for (double skew : {0.9, 1.1}) {
        for (int trial = 0; trial < 20; ++trial) {
          const Parity p = trial % 2 == 0 ? Parity::Even : Parity::Odd;
          const BitFrame f = encode_frame(static_cast<std::uint8_t>(byte(rng)), p);
          const double offset = unit(rng) * 28.0 * td;
          const auto n = static_cast<Eigen::Index>(std::floor(28.0 * td));
          const Signal1D s = square_fixture(f, td, offset, n);
          const ClockEstimate clock = recover_clock(s, skew * td);
          worst = std::max(worst, std::abs(clock.period - td) / td);
          ++fixtures;
        }
      }
    }
    detail = fmt("%d one-frame fixtures, nominal off by 10%%: max period error %.2f%%",
                 fixtures, 100.0 * worst);
    return worst <= 0.05;
  });
}

namespace {

constexpr const char* kDeterminismScene = R"(rows = 512
cols = 1024
row_period = 1.25e-5
pixel_pitch = 0.25
noise_sigma = 0.01
seed = 99
period = 1e-4
ambient = 1e-5
led: x=-25 y=0 h=100 m=1 c1=1 payload=0x52
led: x=25 y=0 h=100 m=1 c1=1 payload=0x53
)";

std::array<std::string, 4> pipeline_outputs() {
  const SceneSpec scene = parse_scene(std::string_view(kDeterminismScene));
  const FrameImage img = render(scene);
  std::ostringstream pgm;
  write_pgm(pgm, img);
  std::istringstream back(pgm.str());
  ReceiverConfig rx;
  rx.pixels_per_bit = scene.pixels_per_bit();
  const DecodeResult got = decode_message(read_pgm(back), rx);
  std::ostringstream energy;
  write_energy_csv(energy, got.profile);
  std::ostringstream signal;
  const RegionDecode& r = got.regions.front();
  write_signal_csv(signal, r.raw, r.dc_removed, r.thresholded);
  SimParams params;
  params.draws = 2;
  const std::array<double, 1> h{50.0};
  const std::array<double, 2> d{25.0, 50.0};
  std::ostringstream sweep;
  write_sweep_csv(sweep, sweep_grid(h, d, params));
  return {pgm.str(), energy.str(), signal.str(), sweep.str()};
}

}  // namespace

CriterionResult check_determinism(const AcceptanceOptions&) {
  return timed(10, "determinism", [](std::string& detail) {
    const auto first = pipeline_outputs();
    const auto second = pipeline_outputs();
    std::size_t bytes = 0;
    for (std::size_t i = 0; i < first.size(); ++i) {
      if (first[i] != second[i]) {
        detail = fmt("output %zu differs between runs", i);
        return false;
      }
      bytes += first[i].size();
    }
    detail = fmt("PGM, energy, signal and sweep outputs identical (%zu bytes)", bytes);
    return true;
  });
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  return {check_frame_structure(opt), check_orthogonality(opt), check_lambertian(opt),
          check_round_trip(opt),      check_localization(opt),  check_regimes(opt),
          check_monotone(opt),        check_sync(opt),          check_clock(opt),
          check_determinism(opt)};
}

void print_results(std::ostream& out, const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    out << (r.pass ? "PASS" : "FAIL") << "  " << fmt("%2d", r.id) << "  " << r.title
        << fmt("  (%.2f s)  ", r.seconds) << r.detail << '\n';
  }
}

}  // namespace rsvlc
