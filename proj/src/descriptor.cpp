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

#include "fasthog/descriptor.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "fasthog/error.hpp"

namespace fasthog {

namespace {

void check_window(int width, int height, Point origin, const DescriptorGeometry& g) {
  if (origin.x < 0 || origin.y < 0 || origin.x + g.window_w > width ||
      origin.y + g.window_h > height) {
    throw Error(Errc::WindowOutOfBounds,
                std::to_string(g.window_w) + "x" + std::to_string(g.window_h) + " window at (" +
                    std::to_string(origin.x) + "," + std::to_string(origin.y) +
                    ") leaves the " + std::to_string(width) + "x" + std::to_string(height) +
                    " image");
  }
}

void check_output(const DescriptorGeometry& g, std::span<double> out) {
  if (out.size() != descriptor_length(g)) {
    throw Error(Errc::InvalidArgument, "descriptor buffer length does not match geometry");
  }
}

// Walks the block lattice; cell(cx, cy) yields the bins of the window cell at
// cell coordinates (cx, cy).
template <class CellFn>
void assemble(const DescriptorGeometry& g, std::span<double> out, CellFn&& cell) {
  const std::size_t bins = static_cast<std::size_t>(g.bins);
  const std::size_t block_len = static_cast<std::size_t>(g.block) * g.block * bins;
  double* dst = out.data();
  for (int by = 0; by < g.blocks_y(); ++by) {
    for (int bx = 0; bx < g.blocks_x(); ++bx) {
      double* block_start = dst;
      for (int cy = 0; cy < g.block; ++cy) {
        for (int cx = 0; cx < g.block; ++cx) {
          const std::uint32_t* counts =
              cell(bx * g.block_stride + cx, by * g.block_stride + cy);
          for (std::size_t n = 0; n < bins; ++n) *dst++ = static_cast<double>(counts[n]);
        }
      }
      normalize({block_start, block_len}, g.normalization);
    }
  }
}

// Histograms of the window's full cell grid from the shared corner lattice:
// (cells_x+1)*(cells_y+1) reads per plane instead of four per cell.
template <class T>
void cell_grid(std::span<const T> planes, const IntegralStack& stack, Point origin,
               const DescriptorGeometry& g, std::vector<T>& corners,
               std::vector<std::uint32_t>& cells) {
  const int ncx = g.cells_x();
  const int ncy = g.cells_y();
  const std::size_t bins = static_cast<std::size_t>(g.bins);
  const std::size_t stride = stack.stride();
  const std::size_t lattice_w = static_cast<std::size_t>(ncx) + 1;
  corners.resize(lattice_w * (ncy + 1));
  cells.resize(static_cast<std::size_t>(ncx) * ncy * bins);
  for (std::size_t n = 0; n < bins; ++n) {
    const T* plane = planes.data() + n * stack.plane_size();
    for (int j = 0; j <= ncy; ++j) {
      const T* row = plane + static_cast<std::size_t>(origin.y + j * g.cell) * stride + origin.x;
      T* dst = corners.data() + j * lattice_w;
      for (int i = 0; i <= ncx; ++i) dst[i] = row[static_cast<std::size_t>(i) * g.cell];
    }
    for (int j = 0; j < ncy; ++j) {
      const T* top = corners.data() + j * lattice_w;
      const T* bottom = top + lattice_w;
      std::uint32_t* dst = cells.data() + static_cast<std::size_t>(j) * ncx * bins + n;
      for (int i = 0; i < ncx; ++i, dst += bins) {
        *dst = static_cast<T>(bottom[i + 1] + top[i] - top[i + 1] - bottom[i]);
      }
    }
  }
}

}  // namespace

Normalization parse_normalization(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "none") return Normalization::None;
  if (lower == "l1") return Normalization::L1;
  if (lower == "l2") return Normalization::L2;
  throw Error(Errc::InvalidArgument, "unknown normalization '" + std::string(text) + "'");
}

std::string_view normalization_name(Normalization n) noexcept {
  switch (n) {
    case Normalization::None: return "none";
    case Normalization::L1: return "l1";
    case Normalization::L2: return "l2";
  }
  return "none";
}

void DescriptorGeometry::validate() const {
  auto fail = [](const std::string& why) { throw Error(Errc::InvalidGeometry, why); };
  if (window_w <= 0 || window_h <= 0) fail("window dimensions must be positive");
  if (cell <= 0 || block <= 0 || block_stride <= 0) {
    fail("cell, block and block stride must be positive");
  }
  if (bins < kMinBins || bins > kMaxBins) fail("bins must be in [2, 64]");
  if (window_w % cell != 0 || window_h % cell != 0) {
    fail("cell " + std::to_string(cell) + " does not divide window " +
         std::to_string(window_w) + "x" + std::to_string(window_h));
  }
  if (block > cells_x() || block > cells_y()) {
    fail("block of " + std::to_string(block) + " cells exceeds the window's cell grid");
  }
}

std::size_t descriptor_length(const DescriptorGeometry& g) {
  g.validate();
  return static_cast<std::size_t>(g.blocks_x()) * g.blocks_y() * g.block * g.block * g.bins;
}

int window_positions(int extent, int window, int stride) noexcept {
  if (stride <= 0 || extent < window) return 0;
  return (extent - window) / stride + 1;
}

void naive_histogram_into(const BinMap& map, const Rect& r, std::span<std::uint32_t> out) {
  if (!(0 <= r.x0 && r.x0 < r.x1 && r.x1 <= map.width() && 0 <= r.y0 && r.y0 < r.y1 &&
        r.y1 <= map.height())) {
    throw Error(Errc::RectOutOfBounds, "rectangle outside the bin map");
  }
  std::fill(out.begin(), out.end(), 0u);
  for (int y = r.y0; y < r.y1; ++y) {
    for (int x = r.x0; x < r.x1; ++x) {
      const BinIndex b = map.at(x, y);
      if (b != kNoBin) ++out[b];
    }
  }
}

Histogram naive_histogram(const BinMap& map, const Rect& r) {
  Histogram h{std::vector<std::uint32_t>(map.bins())};
  naive_histogram_into(map, r, h.counts);
  return h;
}

void normalize(std::span<double> block, Normalization scheme) noexcept {
  double denom = 1.0;
  switch (scheme) {
    case Normalization::None:
      return;
    case Normalization::L1: {
      double sum = 0.0;
      for (double v : block) sum += std::abs(v);
      denom = sum + kNormEpsilon;
      break;
    }
    case Normalization::L2: {
      double sum = 0.0;
      for (double v : block) sum += v * v;
      denom = std::sqrt(sum + kNormEpsilon * kNormEpsilon);
      break;
    }
  }
  for (double& v : block) v /= denom;
}

void window_descriptor_into(const IntegralStack& stack, Point origin,
                            const DescriptorGeometry& g, std::span<double> out) {
  check_output(g, out);
  if (g.bins != stack.bins()) {
    throw Error(Errc::InvalidGeometry, "geometry bins differ from the stack's bins");
  }
  check_window(stack.width(), stack.height(), origin, g);
  std::vector<std::uint32_t> cells;
  stack.with_planes([&](auto planes) {
    using T = typename decltype(planes)::value_type;
    std::vector<std::remove_const_t<T>> corners;
    cell_grid(planes, stack, origin, g, corners, cells);
  });
  const std::size_t row = static_cast<std::size_t>(g.cells_x()) * g.bins;
  assemble(g, out, [&](int cx, int cy) {
    return cells.data() + cy * row + static_cast<std::size_t>(cx) * g.bins;
  });
}

DescriptorVector window_descriptor(const IntegralStack& stack, Point origin,
                                   const DescriptorGeometry& g) {
  DescriptorVector out(descriptor_length(g));
  window_descriptor_into(stack, origin, g, out);
  return out;
}

void naive_window_descriptor_into(const BinMap& map, Point origin, const DescriptorGeometry& g,
                                  std::span<double> out) {
  check_output(g, out);
  if (g.bins != map.bins()) {
    throw Error(Errc::InvalidGeometry, "geometry bins differ from the map's bins");
  }
  check_window(map.width(), map.height(), origin, g);
  std::vector<std::uint32_t> counts(g.bins);
  assemble(g, out, [&](int cx, int cy) {
    const int x0 = origin.x + cx * g.cell;
    const int y0 = origin.y + cy * g.cell;
    naive_histogram_into(map, Rect{x0, y0, x0 + g.cell, y0 + g.cell}, counts);
    return counts.data();
  });
}

DescriptorVector naive_window_descriptor(const BinMap& map, Point origin,
                                         const DescriptorGeometry& g) {
  DescriptorVector out(descriptor_length(g));
  naive_window_descriptor_into(map, origin, g, out);
  return out;
}

CellHistogramCache::CellHistogramCache(const IntegralStack& stack, const DescriptorGeometry& g,
                                       int scan_stride, int threads)
    : geometry_(g),
      width_(stack.width()),
      height_(stack.height()),
      bins_(stack.bins()),
      step_(std::gcd(scan_stride, g.cell)) {
  g.validate();
  if (scan_stride <= 0) throw Error(Errc::InvalidArgument, "scan stride must be positive");
  if (g.bins != stack.bins()) {
    throw Error(Errc::InvalidGeometry, "geometry bins differ from the stack's bins");
  }
  if (width_ < g.cell || height_ < g.cell) return;
  cols_ = static_cast<std::size_t>((width_ - g.cell) / step_) + 1;
  rows_ = static_cast<std::size_t>((height_ - g.cell) / step_) + 1;
  counts_.assign(cols_ * rows_ * bins_, 0);

  auto fill_rows = [&](std::size_t begin, std::size_t end) {
    for (std::size_t ky = begin; ky < end; ++ky) {
      const int y0 = static_cast<int>(ky) * step_;
      for (std::size_t kx = 0; kx < cols_; ++kx) {
        const int x0 = static_cast<int>(kx) * step_;
        rect_histogram_into(stack, Rect{x0, y0, x0 + g.cell, y0 + g.cell},
                            {counts_.data() + (ky * cols_ + kx) * bins_,
                             static_cast<std::size_t>(bins_)});
      }
    }
  };
  const auto workers = static_cast<std::size_t>(std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(threads, 1)), 1, rows_));
  if (workers == 1) {
    fill_rows(0, rows_);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t k = 0; k < workers; ++k) {
    pool.emplace_back(fill_rows, rows_ * k / workers, rows_ * (k + 1) / workers);
  }
}

void CellHistogramCache::descriptor_into(Point origin, std::span<double> out) const {
  check_output(geometry_, out);
  check_window(width_, height_, origin, geometry_);
  if (origin.x % step_ != 0 || origin.y % step_ != 0) {
    throw Error(Errc::InvalidArgument, "window origin is off the cached cell lattice");
  }
  assemble(geometry_, out, [&](int cx, int cy) {
    return cell_at(origin.x + cx * geometry_.cell, origin.y + cy * geometry_.cell);
  });
}

}  // namespace fasthog
