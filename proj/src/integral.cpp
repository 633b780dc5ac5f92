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

#include "fasthog/integral.hpp"

#include <string>

#include "fasthog/error.hpp"

namespace fasthog {

namespace {

template <class T>
void fill_planes(const BinMap& map, std::vector<T>& planes) {
  const int w = map.width();
  const int h = map.height();
  const std::size_t stride = static_cast<std::size_t>(w) + 1;
  const std::size_t plane_size = stride * (h + 1);
  planes.assign(plane_size * map.bins(), 0);
  for (int n = 0; n < map.bins(); ++n) {
    T* plane = planes.data() + n * plane_size;
    const auto bin = static_cast<BinIndex>(n);
    for (int y = 0; y < h; ++y) {
      const T* above = plane + static_cast<std::size_t>(y) * stride;
      T* row = plane + static_cast<std::size_t>(y + 1) * stride;
      T run = 0;
      for (int x = 0; x < w; ++x) {
        run = static_cast<T>(run + (map.at(x, y) == bin ? 1 : 0));
        row[x + 1] = static_cast<T>(above[x + 1] + run);
      }
    }
  }
}

template <class T>
void histogram_from(std::span<const T> planes, std::size_t plane_size, std::size_t stride,
                    const Rect& r, std::span<std::uint32_t> out) {
  const std::size_t a = static_cast<std::size_t>(r.y0) * stride + r.x0;
  const std::size_t b = static_cast<std::size_t>(r.y0) * stride + r.x1;
  const std::size_t c = static_cast<std::size_t>(r.y1) * stride + r.x0;
  const std::size_t d = static_cast<std::size_t>(r.y1) * stride + r.x1;
  const T* plane = planes.data();
  for (std::size_t n = 0; n < out.size(); ++n, plane += plane_size) {
    out[n] = static_cast<T>(plane[d] + plane[a] - plane[b] - plane[c]);
  }
}

void check_rect(const IntegralStack& stack, const Rect& r) {
  if (!stack.contains(r)) {
    throw Error(Errc::RectOutOfBounds,
                "[" + std::to_string(r.x0) + "," + std::to_string(r.x1) + ")x[" +
                    std::to_string(r.y0) + "," + std::to_string(r.y1) + ") outside " +
                    std::to_string(stack.width()) + "x" + std::to_string(stack.height()));
  }
}

}  // namespace

AccWidth acc_width_from_bits(int bits) {
  if (bits == 16) return AccWidth::k16;
  if (bits == 32) return AccWidth::k32;
  throw Error(Errc::InvalidArgument, "accumulator width must be 16 or 32");
}

IntegralStack build_integral_stack(const BinMap& map, AccWidth acc) {
  const long pixels = static_cast<long>(map.width()) * map.height();
  if (acc == AccWidth::k16 && pixels > kMax16BitPixels) {
    throw Error(Errc::AccumulatorOverflowRisk,
                std::to_string(map.width()) + "x" + std::to_string(map.height()) + " = " +
                    std::to_string(pixels) + " pixels exceeds the 16-bit limit of 65535");
  }
  IntegralStack stack;
  stack.width_ = map.width();
  stack.height_ = map.height();
  stack.bins_ = map.bins();
  stack.acc_ = acc;
  if (acc == AccWidth::k16) {
    fill_planes(map, stack.planes16_);
  } else {
    fill_planes(map, stack.planes32_);
  }
  return stack;
}

std::uint32_t rect_count(const IntegralStack& stack, int bin, const Rect& r) {
  if (bin < 0 || bin >= stack.bins()) {
    throw Error(Errc::BinOutOfRange, "bin " + std::to_string(bin) + " with " +
                                         std::to_string(stack.bins()) + " bins");
  }
  check_rect(stack, r);
  // Unsigned wraparound cancels: the true count always fits the accumulator.
  const std::uint32_t sum = stack.value(bin, r.x1, r.y1) + stack.value(bin, r.x0, r.y0) -
                            stack.value(bin, r.x1, r.y0) - stack.value(bin, r.x0, r.y1);
  return stack.acc_width() == AccWidth::k16 ? static_cast<std::uint16_t>(sum) : sum;
}

void rect_histogram_into(const IntegralStack& stack, const Rect& r,
                         std::span<std::uint32_t> out) {
  check_rect(stack, r);
  if (out.size() != static_cast<std::size_t>(stack.bins())) {
    throw Error(Errc::InvalidArgument, "histogram buffer size does not match bins");
  }
  stack.with_planes([&](auto planes) {
    histogram_from(planes, stack.plane_size(), stack.stride(), r, out);
  });
}

Histogram rect_histogram(const IntegralStack& stack, const Rect& r) {
  Histogram h{std::vector<std::uint32_t>(stack.bins())};
  rect_histogram_into(stack, r, h.counts);
  return h;
}

}  // namespace fasthog
