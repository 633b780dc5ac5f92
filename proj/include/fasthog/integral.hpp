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

#include "fasthog/gradient.hpp"

namespace fasthog {

enum class AccWidth : int { k16 = 16, k32 = 32 };

/// Throws InvalidArgument for anything but 16 or 32.
AccWidth acc_width_from_bits(int bits);

/// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  long area() const noexcept { return static_cast<long>(x1 - x0) * (y1 - y0); }
  bool operator==(const Rect&) const = default;
};

struct Histogram {
  std::vector<std::uint32_t> counts;

  bool operator==(const Histogram&) const = default;
};

/// One zero-padded integral image per orientation bin. Plane n at padded
/// coordinate (x, y) holds the number of bin-n pixels in [0, x) x [0, y).
/// Planes are stored bin-major, each (width+1) x (height+1) row-major.
class IntegralStack {
 public:
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int bins() const noexcept { return bins_; }
  AccWidth acc_width() const noexcept { return acc_; }

  std::size_t stride() const noexcept { return static_cast<std::size_t>(width_) + 1; }
  std::size_t plane_size() const noexcept { return stride() * (height_ + 1); }

  /// Plane value at padded coordinate (x, y), 0 <= x <= width, 0 <= y <= height.
  std::uint32_t value(int bin, int x, int y) const noexcept {
    const std::size_t i = bin * plane_size() + static_cast<std::size_t>(y) * stride() + x;
    return acc_ == AccWidth::k16 ? planes16_[i] : planes32_[i];
  }

  /// Calls f with a span over all planes in their native accumulator type.
  template <class F>
  decltype(auto) with_planes(F&& f) const {
    if (acc_ == AccWidth::k16) return f(std::span<const std::uint16_t>(planes16_));
    return f(std::span<const std::uint32_t>(planes32_));
  }

  bool contains(const Rect& r) const noexcept {
    return 0 <= r.x0 && r.x0 < r.x1 && r.x1 <= width_ && 0 <= r.y0 && r.y0 < r.y1 &&
           r.y1 <= height_;
  }

 private:
  friend IntegralStack build_integral_stack(const BinMap& map, AccWidth acc);

  int width_ = 0;
  int height_ = 0;
  int bins_ = 0;
  AccWidth acc_ = AccWidth::k32;
  std::vector<std::uint16_t> planes16_;
  std::vector<std::uint32_t> planes32_;
};

/// Largest width*height accepted for 16-bit accumulators.
inline constexpr long kMax16BitPixels = 65535;

/// Throws AccumulatorOverflowRisk for a 16-bit request on maps with more than
/// 65535 pixels.
IntegralStack build_integral_stack(const BinMap& map, AccWidth acc = AccWidth::k32);

/// Pixels of bin `bin` inside r, from four corner reads.
std::uint32_t rect_count(const IntegralStack& stack, int bin, const Rect& r);

Histogram rect_histogram(const IntegralStack& stack, const Rect& r);

/// Allocation-free rect_histogram; out must hold stack.bins() entries.
void rect_histogram_into(const IntegralStack& stack, const Rect& r,
                         std::span<std::uint32_t> out);

}  // namespace fasthog
