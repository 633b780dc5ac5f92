// Copyright 2026 The fasthog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "fasthog/bench.hpp"
#include "fasthog/descriptor.hpp"
#include "fasthog/detector.hpp"
#include "fasthog/error.hpp"
#include "fasthog/gradient.hpp"
#include "fasthog/image_io.hpp"
#include "fasthog/integral.hpp"
#include "fasthog/reference.hpp"
#include "oracles.hpp"

using namespace fasthog;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

struct Outcome {
  bool pass;
  std::string detail;
};

// 1. Every LUT entry equals direct polar binning, for 4/8/9/18 bins, < 1 s each.
Outcome lut_exactness() {
  std::ostringstream d;
  bool ok = true;
  for (int bins : {4, 8, 9, 18}) {
    const auto start = Clock::now();
    const auto lut = OrientationLut::build(bins);
    long mismatches = 0;
    for (int dx = -255; dx <= 255; ++dx) {
      for (int dy = -255; dy <= 255; ++dy) {
        mismatches += lut.lookup(dx, dy) != oracle::bin(dx, dy, bins);
      }
    }
    const double secs = seconds_since(start);
    ok = ok && mismatches == 0 && secs < 1.0 && lut.table().size() == 261121;
    d << "bins=" << bins << " mismatches=" << mismatches << " time=" << secs << "s; ";
  }
  return {ok, d.str()};
}

// 2. rect_histogram == naive_histogram on 20+ random images x 500 rects.
Outcome integral_equivalence() {
  std::mt19937_64 rng(2);
  long compared = 0;
  long mismatches = 0;
  const int images = 24;
  for (int i = 0; i < images; ++i) {
    const int w = uniform(rng, 16, 200);
    const int h = uniform(rng, 16, 150);
    const Image img = random_image(rng, w, h, i % 2 == 0 ? 1 : 3);
    const BinMap map = gradient_map(img, OrientationLut::build(9));
    const auto stack = build_integral_stack(map);
    for (int k = 0; k < 500; ++k) {
      const Rect r = oracle::random_rect(rng, w, h);
      mismatches += rect_histogram(stack, r) != naive_histogram(map, r);
      ++compared;
    }
  }
  std::ostringstream d;
  d << images << " images, " << compared << " rects, " << mismatches << " mismatches";
  return {mismatches == 0, d.str()};
}

// 3. window_descriptor == naive assembly; exact unnormalized, 1e-9 relative otherwise.
Outcome descriptor_equivalence() {
  std::mt19937_64 rng(3);
  int failures = 0;
  double worst = 0.0;
  int per_norm[3] = {0, 0, 0};
  for (int t = 0; t < 100; ++t) {
    const int w = uniform(rng, 24, 160);
    const int h = uniform(rng, 24, 120);
    const Image img = random_image(rng, w, h, t % 2 == 0 ? 1 : 3);
    DescriptorGeometry g;
    g.bins = std::array{4, 8, 9, 18}[t % 4];
    g.cell = uniform(rng, 2, 8);
    g.block = uniform(rng, 1, std::min({3, w / g.cell, h / g.cell}));
    g.block_stride = uniform(rng, 1, g.block);
    g.window_w = uniform(rng, g.block, w / g.cell) * g.cell;
    g.window_h = uniform(rng, g.block, h / g.cell) * g.cell;
    g.normalization = static_cast<Normalization>(t % 3);
    ++per_norm[t % 3];
    const BinMap map = gradient_map(img, OrientationLut::build(g.bins));
    const auto stack = build_integral_stack(map);
    const Point o{uniform(rng, 0, w - g.window_w), uniform(rng, 0, h - g.window_h)};
    const auto fast = window_descriptor(stack, o, g);
    const auto naive = naive_window_descriptor(map, o, g);
    if (fast.size() != naive.size()) {
      ++failures;
      continue;
    }
    for (std::size_t i = 0; i < fast.size(); ++i) {
      if (g.normalization == Normalization::None) {
        failures += fast[i] != naive[i];
      } else {
        const double rel = std::fabs(fast[i] - naive[i]) / std::max(std::fabs(naive[i]), 1e-300);
        if (naive[i] != 0.0) worst = std::max(worst, rel);
        failures += naive[i] == 0.0 ? fast[i] != 0.0 : rel > 1e-9;
      }
    }
  }
  std::ostringstream d;
  d << "100 triples (none/l1/l2 = " << per_norm[0] << "/" << per_norm[1] << "/" << per_norm[2]
    << "), " << failures << " mismatching entries, worst normalized rel err " << worst;
  return {failures == 0, d.str()};
}

// Median per-call nanoseconds over batches.
double median_latency(int batches, int per_batch, const std::function<void()>& call) {
  std::vector<double> samples;
  for (int b = 0; b < batches; ++b) {
    const auto start = Clock::now();
    for (int k = 0; k < per_batch; ++k) call();
    samples.push_back(std::chrono::duration<double, std::nano>(Clock::now() - start).count() /
                      per_batch);
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

// 4. Integral latency is area independent; naive latency grows with area.
Outcome area_independence() {
  std::mt19937_64 rng(4);
  const Image img = random_image(rng, 300, 300, 1);
  const BinMap map = gradient_map(img, OrientationLut::build(9));
  const auto stack = build_integral_stack(map);
  const Rect small{100, 100, 116, 116};
  const Rect large{20, 20, 276, 276};
  std::vector<std::uint32_t> out(9);
  volatile std::uint32_t sink = 0;

  auto fast = [&](const Rect& r) {
    return median_latency(200, 100, [&] {  // 20000 calls
      rect_histogram_into(stack, r, out);
      sink = sink + out[0];
    });
  };
  auto naive = [&](const Rect& r) {
    return median_latency(50, 20, [&] {
      naive_histogram_into(map, r, out);
      sink = sink + out[0];
    });
  };
  const double fast_small = fast(small);
  const double fast_large = fast(large);
  const double naive_small = naive(small);
  const double naive_large = naive(large);
  const double fast_ratio = fast_large / fast_small;
  const double naive_ratio = naive_large / naive_small;
  std::ostringstream d;
  d << "integral 16x16=" << fast_small << "ns 256x256=" << fast_large << "ns ratio=" << fast_ratio
    << " (<=2); naive 16x16=" << naive_small << "ns 256x256=" << naive_large
    << "ns ratio=" << naive_ratio << " (>=20)";
  return {fast_ratio <= 2.0 && naive_ratio >= 20.0, d.str()};
}

// 5. bench speedup >= 3 on 320x240 stride 1 and 800x600 stride 8, each under 60 s.
Outcome speedup() {
  std::mt19937_64 rng(5);
  const DescriptorGeometry g{64, 128, 8, 2, 1, 9, Normalization::None};
  std::ostringstream d;
  bool ok = true;
  struct Case {
    int w, h, stride;
  };
  for (const Case c : {Case{320, 240, 1}, Case{800, 600, 8}}) {
    const Image img = random_image(rng, c.w, c.h, 1);
    const auto start = Clock::now();
    const BenchReport r = bench(img, g, c.stride, 5);
    const double secs = seconds_since(start);
    ok = ok && r.speedup >= 3.0 && secs < 60.0;
    d << c.w << "x" << c.h << " stride " << c.stride << ": " << r.windows
      << " windows, speedup " << r.speedup << " in " << secs << "s; ";
  }
  return {ok, d.str()};
}

// 6. 16-bit accumulators fit 255x255 and are refused for 300x300.
Outcome overflow_guard() {
  bool accepted = false;
  bool rejected = false;
  try {
    const auto s = build_integral_stack(BinMap(255, 255, 9, std::vector<BinIndex>(255 * 255, 0)),
                                        AccWidth::k16);
    accepted = rect_count(s, 0, {0, 0, 255, 255}) == 255u * 255u;
  } catch (const Error&) {
  }
  try {
    build_integral_stack(BinMap(300, 300, 9), AccWidth::k16);
  } catch (const Error& e) {
    rejected = e.code() == Errc::AccumulatorOverflowRisk;
  }
  return {accepted && rejected, std::string("255x255 ") + (accepted ? "accepted" : "REFUSED") +
                                    ", 300x300 " + (rejected ? "rejected" : "ACCEPTED")};
}

Image ramp_patch(int w, int h, int px, int py, int side) {
  Image img(w, h, 1);
  for (int y = py; y < py + side; ++y) {
    for (int x = px; x < px + side; ++x) {
      img.at(0, x, y) = static_cast<std::uint8_t>(40 + 10 * (x - px));
    }
  }
  return img;
}

LinearModel patch_model() {
  // One-hot on bin 0 (the ramp's orientation) of the window's first cell.
  LinearModel m{{16, 16, 8, 2, 1, 9, Normalization::None}, std::vector<double>(36, 0.0), 0.0};
  m.weights[0] = 1.0;
  return m;
}

bool contains(const Detection& d, int x, int y) {
  return d.x <= x && x < d.x + d.w && d.y <= y && y < d.y + d.h;
}

// 7. Planted patch is found; pyramid level-1 hits map back by the scale step.
Outcome detector_end_to_end() {
  const int px = 52, py = 40, side = 16;
  const Image img = ramp_patch(120, 100, px, py, side);
  const LinearModel model = patch_model();
  const auto stack = build_integral_stack(gradient_map(img, OrientationLut::build(9)));
  const auto kept = nms(scan(stack, model, 1, 0.0), 0.5);
  const bool found = !kept.empty() && contains(kept[0], px + side / 2, py + side / 2);

  // Level 0 is the level-1 scene upsampled by 2, so level 1 is known exactly.
  const double step = 2.0;
  const Image level1 = ramp_patch(60, 50, 26, 20, side);
  Image level0(120, 100, 1);
  for (int y = 0; y < 100; ++y) {
    for (int x = 0; x < 120; ++x) level0.at(0, x, y) = level1.at(0, x / 2, y / 2);
  }
  const auto direct = nms(scan(build_integral_stack(gradient_map(level1, OrientationLut::build(9))),
                               model, 1, 0.0), 0.5);
  auto dets = pyramid_scan(level0, model, step, 1, 0.0);
  std::erase_if(dets, [&](const Detection& d) { return d.scale != step; });
  const auto pyr = nms(dets, 0.5);
  bool mapped = !direct.empty() && !pyr.empty();
  std::ostringstream d;
  if (mapped) {
    const double ex = direct[0].x * step;
    const double ey = direct[0].y * step;
    mapped = std::fabs(pyr[0].x - ex) <= step && std::fabs(pyr[0].y - ey) <= step &&
             contains(pyr[0], 2 * 26 + side, 2 * 20 + side);
    d << "level-1 hit (" << direct[0].x << "," << direct[0].y << ") -> pyramid box (" << pyr[0].x
      << "," << pyr[0].y << "," << pyr[0].w << "," << pyr[0].h << "), expected (" << ex << ","
      << ey << ") +/- " << step << "; ";
  }
  if (!kept.empty()) {
    d << "top level-0 box (" << kept[0].x << "," << kept[0].y << "," << kept[0].w << ","
      << kept[0].h << ") score " << kept[0].score << " vs patch centre (" << px + side / 2 << ","
      << py + side / 2 << ")";
  }
  return {found && mapped, d.str()};
}

// 8. Canonical descriptor lengths.
Outcome canonical_layout() {
  const auto a = descriptor_length({64, 128, 8, 2, 1, 9, Normalization::None});
  const auto b = descriptor_length({16, 16, 8, 2, 1, 9, Normalization::None});
  return {a == 3780 && b == 36, "64x128 -> " + std::to_string(a) + ", 16x16 -> " + std::to_string(b)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 9. detect is byte-for-byte repeatable with and without threads.
Outcome detect_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "fasthog_acceptance";
  fs::create_directories(dir);
  std::mt19937_64 rng(9);
  Image img = random_image(rng, 200, 160, 3);
  for (int y = 60; y < 92; ++y) {
    for (int x = 80; x < 112; ++x) {
      for (int c = 0; c < 3; ++c) img.at(c, x, y) = static_cast<std::uint8_t>(4 * (x - 80));
    }
  }
  write_file(dir / "scene.ppm", encode_ppm(img));
  LinearModel model{{32, 32, 8, 2, 1, 9, Normalization::L2}, {}, -2.0};
  std::normal_distribution<double> n(0.0, 1.0);
  model.weights.resize(descriptor_length(model.geometry));
  for (auto& w : model.weights) w = n(rng);
  std::ofstream(dir / "model.txt") << format_model(model);

  auto run = [&](const std::string& name, std::vector<std::string> extra) {
    std::vector<std::string> args{"detect", "--image", (dir / "scene.ppm").string(), "--model",
                                  (dir / "model.txt").string(), "--stride", "2", "--seed", "42",
                                  "--out", (dir / name).string(), "--threshold", "-1"};
    args.insert(args.end(), extra.begin(), extra.end());
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return code == 0 ? slurp(dir / name) : std::string("exit ") + std::to_string(code) + err.str();
  };
  const std::string a = run("a.txt", {});
  const std::string b = run("b.txt", {});
  const std::string c = run("c.txt", {"--threads", "4"});
  const std::string pa = run("pa.txt", {"--pyramid"});
  const std::string pb = run("pb.txt", {"--pyramid", "--threads", "3"});
  const bool ok = !a.empty() && a.rfind("exit", 0) != 0 && a == b && a == c && !pa.empty() &&
                  pa.rfind("exit", 0) != 0 && pa == pb;
  std::ostringstream d;
  d << std::count(a.begin(), a.end(), '\n') << " detections single-scale, "
    << std::count(pa.begin(), pa.end(), '\n') << " with pyramid; runs "
    << (ok ? "byte-identical" : "DIFFER");
  return {ok, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*check)();
  };
  const Criterion criteria[] = {
      {"AC1 LUT exactness", lut_exactness},
      {"AC2 integral/naive histogram equivalence", integral_equivalence},
      {"AC3 descriptor equivalence", descriptor_equivalence},
      {"AC4 area independence", area_independence},
      {"AC5 speedup", speedup},
      {"AC6 16-bit overflow guard", overflow_guard},
      {"AC7 detector end-to-end", detector_end_to_end},
      {"AC8 canonical layout", canonical_layout},
      {"AC9 detect determinism", detect_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
