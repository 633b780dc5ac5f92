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
#include <string_view>
#include <vector>

#include "fasthog/gradient.hpp"
#include "fasthog/integral.hpp"

namespace fasthog {

enum class Normalization { None, L1, L2 };

/// "none", "l1" or "l2" (case-insensitive); throws InvalidArgument otherwise.
Normalization parse_normalization(std::string_view text);
std::string_view normalization_name(Normalization n) noexcept;

/// Cell/block layout of a detection window. Blocks are square groups of
/// square cells, placed every block_stride cells.
struct DescriptorGeometry {
  int window_w = 64;
  int window_h = 128;
  int cell = 8;
  int block = 2;
  int block_stride = 1;
  int bins = 9;
  Normalization normalization = Normalization::None;

  /// Throws InvalidGeometry when the layout is inconsistent.
  void validate() const;

  int cells_x() const noexcept { return window_w / cell; }
  int cells_y() const noexcept { return window_h / cell; }
  int blocks_x() const noexcept { return (cells_x() - block) / block_stride + 1; }
  int blocks_y() const noexcept { return (cells_y() - block) / block_stride + 1; }

  bool operator==(const DescriptorGeometry&) const = default;
};

struct Point {
  int x = 0;
  int y = 0;

  bool operator==(const Point&) const = default;
};

/// Raw bin counts (as reals) when unnormalized.
using DescriptorVector = std::vector<double>;

std::size_t descriptor_length(const DescriptorGeometry& g);

/// Number of window positions along one axis for the given scan stride.
int window_positions(int extent, int window, int stride) noexcept;

/// Reference per-pixel counting; NO_BIN pixels are skipped.
Histogram naive_histogram(const BinMap& map, const Rect& r);
void naive_histogram_into(const BinMap& map, const Rect& r, std::span<std::uint32_t> out);

/// In-place block normalization: L1 divides by (sum|v| + 1e-6), L2 by
/// sqrt(sum v^2 + 1e-12).
void normalize(std::span<double> block, Normalization scheme) noexcept;

inline constexpr double kNormEpsilon = 1e-6;

/// Window descriptor from the integral stack: blocks row-major, cells within a
/// block row-major, bins ascending, then per-block normalization.
DescriptorVector window_descriptor(const IntegralStack& stack, Point origin,
                                   const DescriptorGeometry& g);
void window_descriptor_into(const IntegralStack& stack, Point origin,
                            const DescriptorGeometry& g, std::span<double> out);

/// Same layout assembled from naive_histogram of every cell of every block.
DescriptorVector naive_window_descriptor(const BinMap& map, Point origin,
                                         const DescriptorGeometry& g);
void naive_window_descriptor_into(const BinMap& map, Point origin, const DescriptorGeometry& g,
                                  std::span<double> out);

/// Cell histograms of a whole image, computed once on the lattice of cell
/// origins a scan with the given stride can visit. Write-once after build and
/// safe to share between readers.
class CellHistogramCache {
 public:
  CellHistogramCache(const IntegralStack& stack, const DescriptorGeometry& g, int scan_stride,
                     int threads = 1);

  /// origin must be a multiple of the scan stride and the window must fit.
  void descriptor_into(Point origin, std::span<double> out) const;

  int lattice_step() const noexcept { return step_; }

 private:
  const std::uint32_t* cell_at(int px, int py) const noexcept {
    const std::size_t k =
        static_cast<std::size_t>(py / step_) * cols_ + static_cast<std::size_t>(px / step_);
    return counts_.data() + k * bins_;
  }

  DescriptorGeometry geometry_;
  int width_;
  int height_;
  int bins_;
  int step_;
  std::size_t cols_ = 0;
  std::size_t rows_ = 0;
  std::vector<std::uint32_t> counts_;
};

}  // namespace fasthog
