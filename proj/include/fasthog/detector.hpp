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

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fasthog/descriptor.hpp"
#include "fasthog/image_io.hpp"
#include "fasthog/integral.hpp"

namespace fasthog {

struct LinearModel {
  DescriptorGeometry geometry;
  std::vector<double> weights;
  double bias = 0.0;
};

/// Text model format:
///   HOGMODEL 1
///   window_w window_h cell block block_stride bins normalization
///   bias
///   one weight per line, descriptor_length(geometry) of them
LinearModel load_model(std::string_view text);
LinearModel load_model_file(const std::filesystem::path& path);

/// Writes weights with 17 significant digits so load_model round-trips exactly.
std::string format_model(const LinearModel& model);

double score_window(const LinearModel& model, std::span<const double> descriptor);

struct Box {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool operator==(const Box&) const = default;
};

double iou(const Box& a, const Box& b) noexcept;

struct Detection {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  double score = 0.0;
  double scale = 1.0;

  Box box() const noexcept { return {x, y, w, h}; }
  bool operator==(const Detection&) const = default;
};

struct ScanOptions {
  int threads = 1;
  bool use_cache = true;
};

/// Scores every window origin (i*stride, j*stride) in row-major order and
/// keeps those scoring strictly above threshold.
std::vector<Detection> scan(const IntegralStack& stack, const LinearModel& model, int stride,
                            double threshold, const ScanOptions& options = {});

/// Bilinear resample to width x height, sampling the source at
/// ((x + 0.5) * scale - 0.5, (y + 0.5) * scale - 0.5).
Image resize_bilinear(const Image& image, int width, int height, double scale);

/// Runs the full pipeline on levels scaled by 1, s, s^2, ... while the window
/// fits; boxes are mapped back to original coordinates.
std::vector<Detection> pyramid_scan(const Image& image, const LinearModel& model,
                                    double scale_step, int stride, double threshold,
                                    const ScanOptions& options = {});

/// Greedy suppression: highest score first (ties by y, x, scale ascending);
/// a detection survives if its IoU with every kept one is <= iou_threshold.
std::vector<Detection> nms(std::vector<Detection> detections, double iou_threshold);

}  // namespace fasthog
