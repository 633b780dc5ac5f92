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

#include "fasthog/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "fasthog/error.hpp"

namespace fasthog {

namespace {

// Integer (dx, dy) pairs in [-255, 255]^2 either sit exactly on a sector
// boundary (multiples of pi/4) or stay at least 5e-8 rad from every boundary
// for 2..64 bins. The snap repairs atan2 rounding on exact boundaries without
// moving any other angle.
constexpr double kBoundarySnap = 1e-9;

void row_range(const Image& image, const OrientationLut& lut, BinMap& out, int y_begin,
               int y_end) {
  const int w = image.width();
  const int channels = image.channels();
  for (int y = y_begin; y < y_end; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      int best_dx = 0;
      int best_dy = 0;
      int best_mag = -1;
      for (int c = 0; c < channels; ++c) {
        const int dx = int{image.at(c, x + 1, y)} - int{image.at(c, x - 1, y)};
        const int dy = int{image.at(c, x, y + 1)} - int{image.at(c, x, y - 1)};
        const int mag = dx * dx + dy * dy;
        if (mag > best_mag) {
          best_mag = mag;
          best_dx = dx;
          best_dy = dy;
        }
      }
      out.at(x, y) = lut.lookup(best_dx, best_dy);
    }
  }
}

}  // namespace

BinIndex bin_of(int dx, int dy, int bins) noexcept {
  if (dx == 0 && dy == 0) return kNoBin;
  double phi = std::atan2(static_cast<double>(dy), static_cast<double>(dx));
  if (phi < 0) phi += 2 * std::numbers::pi;
  const double t = phi * bins / (2 * std::numbers::pi);
  const double nearest = std::round(t);
  int bin = std::abs(t - nearest) < kBoundarySnap ? static_cast<int>(nearest)
                                                  : static_cast<int>(std::floor(t));
  if (bin >= bins) bin = bins - 1;
  return static_cast<BinIndex>(bin);
}

OrientationLut OrientationLut::build(int bins) {
  if (bins < kMinBins || bins > kMaxBins) {
    throw Error(Errc::BinCountOutOfRange,
                "bins must be in [2, 64], got " + std::to_string(bins));
  }
  std::vector<BinIndex> table(static_cast<std::size_t>(kLutSide) * kLutSide);
  for (int dx = -kMaxDelta; dx <= kMaxDelta; ++dx) {
    for (int dy = -kMaxDelta; dy <= kMaxDelta; ++dy) {
      table[static_cast<std::size_t>(dx + kMaxDelta) * kLutSide + (dy + kMaxDelta)] =
          bin_of(dx, dy, bins);
    }
  }
  return OrientationLut(bins, std::move(table));
}

BinMap::BinMap(int width, int height, int bins)
    : BinMap(width, height, bins,
             std::vector<BinIndex>(static_cast<std::size_t>(width) * height, kNoBin)) {}

BinMap::BinMap(int width, int height, int bins, std::vector<BinIndex> cells)
    : width_(width), height_(height), bins_(bins), cells_(std::move(cells)) {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::InvalidDimensions, "bin map dimensions must be positive");
  }
  if (bins < kMinBins || bins > kMaxBins) {
    throw Error(Errc::BinCountOutOfRange, "bins must be in [2, 64]");
  }
  if (cells_.size() != static_cast<std::size_t>(width) * height) {
    throw Error(Errc::InvalidDimensions, "cell count does not match width*height");
  }
  for (BinIndex b : cells_) {
    if (b != kNoBin && b >= bins) {
      throw Error(Errc::BinOutOfRange, "cell value " + std::to_string(b) + " >= bins");
    }
  }
}

BinMap gradient_map(const Image& image, const OrientationLut& lut, int threads) {
  if (image.width() < 3 || image.height() < 3) {
    throw Error(Errc::ImageTooSmall, "gradient map needs at least 3x3, got " +
                                         std::to_string(image.width()) + "x" +
                                         std::to_string(image.height()));
  }
  BinMap out(image.width(), image.height(), lut.bins());
  const int first = 1;
  const int last = image.height() - 1;
  const int rows = last - first;
  const int workers = std::clamp(threads, 1, rows);
  if (workers == 1) {
    row_range(image, lut, out, first, last);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int k = 0; k < workers; ++k) {
      const int begin = first + rows * k / workers;
      const int end = first + rows * (k + 1) / workers;
      pool.emplace_back([&, begin, end] { row_range(image, lut, out, begin, end); });
    }
  }
  return out;
}

}  // namespace fasthog
