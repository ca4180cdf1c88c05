// Copyright 2026 The rsvlc Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: simulate, decode, sweep, selftest.
//
// Exit codes: 0 success, 1 selftest failure, 2 invalid input, 3 decode
// failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsvlc/acceptance.hpp"
#include "rsvlc/analysis.hpp"
#include "rsvlc/error.hpp"
#include "rsvlc/image_io.hpp"
#include "rsvlc/receiver.hpp"
#include "rsvlc/scene.hpp"
#include "rsvlc/signal.hpp"

namespace {

constexpr int kInvalidInput = 2;
constexpr int kDecodeFailure = 3;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rsvlc::Error(rsvlc::ErrorKind::IoError, "cannot write " + path);
  return out;
}

struct SimulateArgs {
  std::string scene;
  std::string output;
  std::optional<double> t0;
  long crop_rows = 0;
};

int run_simulate(const SimulateArgs& args) {
  rsvlc::SceneSpec scene;
  try {
    scene = rsvlc::load_scene(args.scene);
    if (args.t0) scene.t0 = *args.t0;
    rsvlc::validate(scene);
  } catch (const rsvlc::Error& e) {
    std::cerr << "rsvlc simulate: " << e.what() << '\n';
    return kInvalidInput;
  }
  rsvlc::FrameImage img = rsvlc::render(scene);
  if (args.crop_rows > 0 && args.crop_rows < img.rows()) img = img.crop_rows(0, args.crop_rows);
  auto out = open_output(args.output);
  rsvlc::write_pgm(out, img);

  const double td = scene.pixels_per_bit();
  std::cout << "T_d = " << rsvlc::format_number(td) << '\n'
            << "rows_per_frame = "
            << static_cast<long>(std::ceil(static_cast<double>(rsvlc::kFrameBits) * td)) << '\n'
            << "capacity_bits = "
            << static_cast<long>(std::floor(static_cast<double>(img.rows()) / td)) << '\n'
            << "payload_bits = " << 8 * scene.leds.size() << '\n'
            << "t0 = " << rsvlc::format_number(scene.capture_time()) << '\n'
            << "image = " << img.rows() << 'x' << img.cols() << '\n';
  return 0;
}

struct DecodeArgs {
  std::string image;
  double td = 0.0;
  std::string energy_csv;
  std::string signal_csv;
  std::size_t region = 0;
};

int run_decode(const DecodeArgs& args) {
  rsvlc::FrameImage img;
  try {
    img = rsvlc::read_pgm(std::filesystem::path(args.image));
  } catch (const rsvlc::Error& e) {
    std::cerr << "rsvlc decode: " << e.what() << '\n';
    return kInvalidInput;
  }
  if (!(args.td > 0.0)) {
    std::cerr << "rsvlc decode: --td must be > 0\n";
    return kInvalidInput;
  }
  rsvlc::ReceiverConfig cfg;
  cfg.pixels_per_bit = args.td;
  rsvlc::DecodeResult result;
  try {
    result = rsvlc::decode_message(img, cfg);
  } catch (const rsvlc::Error& e) {
    std::cerr << "rsvlc decode: " << e.what() << '\n';
    return kDecodeFailure;
  }

  if (!args.energy_csv.empty()) {
    auto out = open_output(args.energy_csv);
    rsvlc::write_energy_csv(out, result.profile);
  }
  if (!args.signal_csv.empty()) {
    if (args.region >= result.regions.size()) {
      std::cerr << "rsvlc decode: --region " << args.region << " out of range\n";
      return kInvalidInput;
    }
    const auto& r = result.regions[args.region];
    auto out = open_output(args.signal_csv);
    rsvlc::write_signal_csv(out, r.raw, r.dc_removed, r.thresholded);
  }

  std::cout << "bytes:";
  for (auto b : result.bytes) {
    char hex[8];
    std::snprintf(hex, sizeof hex, " %02x", b);
    std::cout << hex;
  }
  std::cout << '\n' << "order: " << (result.reversed ? "right-to-left" : "left-to-right") << '\n';
  for (std::size_t i = 0; i < result.regions.size(); ++i) {
    const auto& r = result.regions[i];
    char byte[8];
    std::snprintf(byte, sizeof byte, "0x%02x", r.payload);
    std::cout << "region " << i << ": cols " << r.range.first << '-' << r.range.last
              << " parity " << (r.parity ? rsvlc::to_string(*r.parity) : "?")
              << " period " << rsvlc::format_number(r.clock.period) << " phase "
              << rsvlc::format_number(r.clock.phase) << " energy_min "
              << rsvlc::format_number(r.energy_min) << " byte " << byte << '\n';
  }
  for (auto c : result.map.centers) std::cout << "interference center: col " << c << '\n';
  return 0;
}

struct SweepArgs {
  std::vector<double> h;
  std::vector<double> dxy;
  std::string output;
  double m = 1.0;
  int draws = rsvlc::SimParams{}.draws;
  std::uint64_t seed = 0;
};

int run_sweep(const SweepArgs& args) {
  rsvlc::SimParams params;
  params.m = args.m;
  params.draws = args.draws;
  params.seed = args.seed;
  std::vector<rsvlc::GeometrySweepPoint> points;
  try {
    points = rsvlc::sweep_grid(args.h, args.dxy, params);
  } catch (const rsvlc::Error& e) {
    std::cerr << "rsvlc sweep: " << e.what() << '\n';
    return kInvalidInput;
  }
  auto out = open_output(args.output);
  rsvlc::write_sweep_csv(out, points);
  const auto counts = rsvlc::regime_counts(points);
  for (auto r : {rsvlc::Regime::PointSource, rsvlc::Regime::Separable,
                 rsvlc::Regime::LowEnergyInterference}) {
    std::cout << rsvlc::to_string(r) << ": " << counts[static_cast<std::size_t>(r)] << '\n';
  }
  return 0;
}

int run_selftest(std::uint64_t seed) {
  const auto results = rsvlc::run_acceptance({seed});
  rsvlc::print_results(std::cout, results);
  for (const auto& r : results) {
    if (!r.pass) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rolling-shutter visible light communication simulator and decoder"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Render a scene file to a PGM frame");
  simulate->add_option("scene", sim.scene, "Scene file")->required();
  simulate->add_option("-o,--output", sim.output, "Output PGM")->required();
  simulate->add_option("--t0", sim.t0, "Capture time in seconds (overrides the scene)");
  simulate->add_option("--crop-rows", sim.crop_rows, "Keep only the first N rows");

  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "Decode the bytes carried by a PGM frame");
  decode->add_option("image", dec.image, "Input PGM")->required();
  decode->add_option("--td", dec.td, "Rows per bit (T / Ts)")->required();
  decode->add_option("--energy-csv", dec.energy_csv, "Write the energy profile");
  decode->add_option("--signal-csv", dec.signal_csv, "Write one region's 1-D signals");
  decode->add_option("--region", dec.region, "Region for --signal-csv (left to right)");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Two-LED geometry study over an h x d_xy grid");
  sweep->add_option("--height", sw.h, "LED heights in mm (comma separated)")->delimiter(',');
  sweep->add_option("--dxy", sw.dxy, "LED spacings in mm (comma separated)")->delimiter(',');
  sweep->add_option("-o,--output", sw.output, "Output CSV")->required();
  sweep->add_option("--m", sw.m, "Lambertian order");
  sweep->add_option("--draws", sw.draws, "Payload draws averaged per point");
  sweep->add_option("--seed", sw.seed, "Payload seed");

  std::uint64_t selftest_seed = rsvlc::AcceptanceOptions{}.seed;
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance checks");
  selftest->add_option("--seed", selftest_seed, "Base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*decode) return run_decode(dec);
    if (*sweep) return run_sweep(sw);
    if (*selftest) return run_selftest(selftest_seed);
  } catch (const rsvlc::Error& e) {
    std::cerr << "rsvlc: " << e.what() << '\n';
    return kInvalidInput;
  }
  return 0;
}
