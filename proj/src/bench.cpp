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

#include "fasthog/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <vector>

#include "fasthog/error.hpp"
#include "fasthog/gradient.hpp"

namespace fasthog {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - since).count();
}

std::int64_t median(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2;
}

// Keeps the optimizer from discarding descriptor work.
volatile double g_sink = 0.0;

}  // namespace

BenchReport bench(const Image& image, const DescriptorGeometry& g, int stride, int repeats,
                  AccWidth acc) {
  g.validate();
  if (repeats < 3) throw Error(Errc::InvalidArgument, "bench needs at least 3 repeats");
  if (stride < 1) throw Error(Errc::InvalidArgument, "scan stride must be >= 1");
  const int cols = window_positions(image.width(), g.window_w, stride);
  const int rows = window_positions(image.height(), g.window_h, stride);
  if (cols == 0 || rows == 0) {
    throw Error(Errc::NoValidWindows, "window does not fit the image");
  }

  const auto lut = OrientationLut::build(g.bins);
  const BinMap map = gradient_map(image, lut);
  const std::size_t len = descriptor_length(g);
  std::vector<double> naive(len);
  std::vector<double> fast(len);

  {
    const auto stack = build_integral_stack(map, acc);
    for (int j = 0; j < rows; ++j) {
      for (int i = 0; i < cols; ++i) {
        const Point origin{i * stride, j * stride};
        naive_window_descriptor_into(map, origin, g, naive);
        window_descriptor_into(stack, origin, g, fast);
        if (naive != fast) {
          throw Error(Errc::PathMismatch, "descriptors differ at window (" +
                                              std::to_string(origin.x) + "," +
                                              std::to_string(origin.y) + ")");
        }
      }
    }
  }

  std::vector<std::int64_t> naive_times;
  std::vector<std::int64_t> integral_times;
  std::vector<std::int64_t> build_times;
  for (int rep = 0; rep < repeats; ++rep) {
    double sink = 0.0;
    auto start = Clock::now();
    for (int j = 0; j < rows; ++j) {
      for (int i = 0; i < cols; ++i) {
        naive_window_descriptor_into(map, {i * stride, j * stride}, g, naive);
        sink += naive[len / 2];
      }
    }
    naive_times.push_back(std::max<std::int64_t>(elapsed_ns(start), 1));

    start = Clock::now();
    const auto stack = build_integral_stack(map, acc);
    build_times.push_back(std::max<std::int64_t>(elapsed_ns(start), 1));
    for (int j = 0; j < rows; ++j) {
      for (int i = 0; i < cols; ++i) {
        window_descriptor_into(stack, {i * stride, j * stride}, g, fast);
        sink += fast[len / 2];
      }
    }
    integral_times.push_back(std::max<std::int64_t>(elapsed_ns(start), 1));
    g_sink = g_sink + sink;
  }

  BenchReport r;
  r.width = image.width();
  r.height = image.height();
  r.geometry = g;
  r.stride = stride;
  r.acc = acc;
  r.repeats = repeats;
  r.windows = static_cast<long>(cols) * rows;
  r.naive_ns = median(naive_times);
  r.integral_ns = median(integral_times);
  r.stack_build_ns = median(build_times);
  r.speedup = static_cast<double>(r.naive_ns) / static_cast<double>(r.integral_ns);
  return r;
}

std::string format_report(const BenchReport& r) {
  const auto& g = r.geometry;
  std::ostringstream out;
  out << "image:          " << r.width << "x" << r.height << "\n"
      << "bins:           " << g.bins << "\n"
      << "window:         " << g.window_w << "x" << g.window_h << "\n"
      << "cell:           " << g.cell << "\n"
      << "block:          " << g.block << " (stride " << g.block_stride << ")\n"
      << "normalization:  " << normalization_name(g.normalization) << "\n"
      << "scan stride:    " << r.stride << "\n"
      << "accumulator:    " << static_cast<int>(r.acc) << "-bit\n"
      << "windows:        " << r.windows << "\n"
      << "repeats:        " << r.repeats << "\n"
      << "naive_ns:       " << r.naive_ns << "\n"
      << "integral_ns:    " << r.integral_ns << "\n"
      << "stack_build_ns: " << r.stack_build_ns << "\n"
      << "speedup:        " << r.speedup << "\n";
  return out.str();
}

std::string csv_header() {
  return "width,height,bins,window_w,window_h,cell,block,block_stride,normalization,stride,"
         "acc_bits,repeats,windows,naive_ns,integral_ns,stack_build_ns,speedup";
}

std::string csv_row(const BenchReport& r) {
  const auto& g = r.geometry;
  std::ostringstream out;
  out << r.width << ',' << r.height << ',' << g.bins << ',' << g.window_w << ',' << g.window_h
      << ',' << g.cell << ',' << g.block << ',' << g.block_stride << ','
      << normalization_name(g.normalization) << ',' << r.stride << ','
      << static_cast<int>(r.acc) << ',' << r.repeats << ',' << r.windows << ',' << r.naive_ns
      << ',' << r.integral_ns << ',' << r.stack_build_ns << ',' << r.speedup;
  return out.str();
}

}  // namespace fasthog
