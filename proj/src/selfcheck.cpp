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

#include "fasthog/selfcheck.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "fasthog/descriptor.hpp"
#include "fasthog/detector.hpp"
#include "fasthog/gradient.hpp"
#include "fasthog/integral.hpp"
#include "fasthog/reference.hpp"

namespace fasthog {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Rect random_rect(std::mt19937_64& rng, int width, int height) {
  int x0 = uniform(rng, 0, width - 1);
  int x1 = uniform(rng, 0, width - 1);
  int y0 = uniform(rng, 0, height - 1);
  int y1 = uniform(rng, 0, height - 1);
  if (x0 > x1) std::swap(x0, x1);
  if (y0 > y1) std::swap(y0, y1);
  return {x0, y0, x1 + 1, y1 + 1};
}

// A geometry that fits a width x height image, plus an origin for it.
DescriptorGeometry random_geometry(std::mt19937_64& rng, int bins, int width, int height) {
  DescriptorGeometry g;
  g.bins = bins;
  g.cell = uniform(rng, 2, std::min({8, width, height}));
  const int max_cells_x = width / g.cell;
  const int max_cells_y = height / g.cell;
  g.block = uniform(rng, 1, std::min({3, max_cells_x, max_cells_y}));
  g.block_stride = uniform(rng, 1, g.block);
  g.window_w = uniform(rng, g.block, max_cells_x) * g.cell;
  g.window_h = uniform(rng, g.block, max_cells_y) * g.cell;
  g.normalization = static_cast<Normalization>(uniform(rng, 0, 2));
  return g;
}

}  // namespace

bool SelfCheckResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

SelfCheckResult selfcheck(const SelfCheckOptions& options) {
  SelfCheckResult result;
  const auto lut = OrientationLut::build(options.bins);

  bool lut_ok = true;
  for (int dx = -kMaxDelta; dx <= kMaxDelta && lut_ok; ++dx) {
    for (int dy = -kMaxDelta; dy <= kMaxDelta; ++dy) {
      if (lut.lookup(dx, dy) != bin_of(dx, dy, options.bins)) {
        lut_ok = false;
        break;
      }
    }
  }
  result.checks.emplace_back("lookup table matches direct binning on all 261121 pairs", lut_ok);

  std::mt19937_64 rng(options.seed);
  bool gradient_ok = true;
  bool rect_ok = true;
  bool acc16_ok = true;
  bool descriptor_ok = true;
  bool scan_ok = true;
  for (int trial = 0; trial < options.trials; ++trial) {
    const int w = uniform(rng, 16, 96);
    const int h = uniform(rng, 16, 96);
    const Image image = random_image(rng, w, h, uniform(rng, 0, 1) == 0 ? 1 : 3);
    const BinMap map = gradient_map(image, lut);
    gradient_ok = gradient_ok && map == reference_gradient_map(image, options.bins);

    const auto stack = build_integral_stack(map);
    const auto stack16 = build_integral_stack(map, AccWidth::k16);
    for (int k = 0; k < 100; ++k) {
      const Rect r = random_rect(rng, w, h);
      const Histogram fast = rect_histogram(stack, r);
      rect_ok = rect_ok && fast == naive_histogram(map, r);
      acc16_ok = acc16_ok && fast == rect_histogram(stack16, r);
    }

    LinearModel model;
    model.geometry = random_geometry(rng, options.bins, w, h);
    const auto& g = model.geometry;
    const Point origin{uniform(rng, 0, w - g.window_w), uniform(rng, 0, h - g.window_h)};
    descriptor_ok = descriptor_ok && window_descriptor(stack, origin, g) ==
                                         naive_window_descriptor(map, origin, g);

    std::normal_distribution<double> weight(0.0, 1.0);
    model.weights.resize(descriptor_length(g));
    for (auto& v : model.weights) v = weight(rng);
    model.bias = weight(rng);
    const int stride = uniform(rng, 1, g.cell);
    const double all = -std::numeric_limits<double>::infinity();
    scan_ok = scan_ok && scan(stack, model, stride, all, {.threads = 1, .use_cache = true}) ==
                             scan(stack, model, stride, all, {.threads = 1, .use_cache = false});
  }
  result.checks.emplace_back("gradient map matches per-pixel atan2 reference", gradient_ok);
  result.checks.emplace_back("rect histogram matches naive counting", rect_ok);
  result.checks.emplace_back("16-bit stack matches 32-bit stack", acc16_ok);
  result.checks.emplace_back("window descriptor matches naive assembly", descriptor_ok);
  result.checks.emplace_back("cached scan matches uncached scan", scan_ok);
  return result;
}

}  // namespace fasthog
