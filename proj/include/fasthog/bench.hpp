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

#include <cstdint>
#include <string>

#include "fasthog/descriptor.hpp"
#include "fasthog/image_io.hpp"
#include "fasthog/integral.hpp"

namespace fasthog {

struct BenchReport {
  int width = 0;
  int height = 0;
  DescriptorGeometry geometry;
  int stride = 0;
  AccWidth acc = AccWidth::k32;
  int repeats = 0;
  long windows = 0;
  std::int64_t naive_ns = 0;        // median, per-pixel counting of every cell
  std::int64_t integral_ns = 0;     // median, stack build plus all windows
  std::int64_t stack_build_ns = 0;  // median
  double speedup = 0.0;             // naive_ns / integral_ns
};

/// Times the naive and integral descriptor paths over every window of the
/// image. Both paths are first checked for identical output (PathMismatch
/// otherwise); timings are medians over `repeats` (>= 3) runs.
BenchReport bench(const Image& image, const DescriptorGeometry& g, int stride, int repeats,
                  AccWidth acc = AccWidth::k32);

std::string format_report(const BenchReport& report);
std::string csv_header();
std::string csv_row(const BenchReport& report);

}  // namespace fasthog
