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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fasthog/image_io.hpp"

namespace fasthog {

/// Orientation bin index. Values 0..bins-1, or kNoBin.
using BinIndex = std::uint8_t;

/// Marks pixels without an orientation: zero gradient or image border.
inline constexpr BinIndex kNoBin = 0xFF;

inline constexpr int kMinBins = 2;
inline constexpr int kMaxBins = 64;
inline constexpr int kMaxDelta = 255;
inline constexpr int kLutSide = 2 * kMaxDelta + 1;  // 511

/// Bin of the gradient (dx, dy) over the full circle [0, 2*pi). Bins are
/// half-open sectors; an angle exactly on a boundary goes to the higher bin.
BinIndex bin_of(int dx, int dy, int bins) noexcept;

/// 511x511 table of bin_of for every (dx, dy) in [-255, 255]^2.
class OrientationLut {
 public:
  /// Throws BinCountOutOfRange unless 2 <= bins <= 64.
  static OrientationLut build(int bins);

  int bins() const noexcept { return bins_; }

  BinIndex lookup(int dx, int dy) const noexcept {
    return table_[static_cast<std::size_t>(dx + kMaxDelta) * kLutSide + (dy + kMaxDelta)];
  }

  std::span<const BinIndex> table() const noexcept { return table_; }

 private:
  OrientationLut(int bins, std::vector<BinIndex> table)
      : bins_(bins), table_(std::move(table)) {}

  int bins_;
  std::vector<BinIndex> table_;
};

/// Per-pixel orientation bins of one image.
class BinMap {
 public:
  BinMap() = default;
  BinMap(int width, int height, int bins);
  BinMap(int width, int height, int bins, std::vector<BinIndex> cells);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int bins() const noexcept { return bins_; }

  BinIndex at(int x, int y) const noexcept {
    return cells_[static_cast<std::size_t>(y) * width_ + x];
  }
  BinIndex& at(int x, int y) noexcept {
    return cells_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const BinIndex> cells() const noexcept { return cells_; }
  std::span<BinIndex> cells() noexcept { return cells_; }

  bool operator==(const BinMap&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int bins_ = 0;
  std::vector<BinIndex> cells_;
};

/// Central-difference orientation map. For color images the channel with the
/// largest squared gradient wins (ties to the lowest channel). Border pixels
/// and zero gradients are kNoBin. With threads > 1 rows are split across
/// workers; the result is identical to the sequential one.
BinMap gradient_map(const Image& image, const OrientationLut& lut, int threads = 1);

}  // namespace fasthog
