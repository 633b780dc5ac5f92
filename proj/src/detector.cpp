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

#include "fasthog/detector.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <thread>

#include "fasthog/error.hpp"
#include "fasthog/gradient.hpp"

namespace fasthog {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

double parse_real(std::string_view token, Errc on_error, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    // from_chars rejects "inf"/"nan" spellings on some libraries; strtod does not.
    std::string copy(token);
    char* end = nullptr;
    value = std::strtod(copy.c_str(), &end);
    if (copy.empty() || end != copy.c_str() + copy.size()) {
      throw Error(on_error, std::string("malformed ") + what + " '" + copy + "'");
    }
  }
  return value;
}

std::vector<Detection> scan_rows(const IntegralStack& stack, const LinearModel& model,
                                 const CellHistogramCache* cache, int stride, double threshold,
                                 int row_begin, int row_end, int cols) {
  std::vector<Detection> hits;
  std::vector<double> descriptor(model.weights.size());
  const auto& g = model.geometry;
  for (int j = row_begin; j < row_end; ++j) {
    for (int i = 0; i < cols; ++i) {
      const Point origin{i * stride, j * stride};
      if (cache != nullptr) {
        cache->descriptor_into(origin, descriptor);
      } else {
        window_descriptor_into(stack, origin, g, descriptor);
      }
      const double s = score_window(model, descriptor);
      if (s > threshold) hits.push_back({origin.x, origin.y, g.window_w, g.window_h, s, 1.0});
    }
  }
  return hits;
}

}  // namespace

LinearModel load_model(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() < 3) throw Error(Errc::BadHeader, "model needs a header, geometry and bias");
  {
    std::istringstream magic{std::string(lines[0])};
    std::string tag;
    int version = 0;
    std::string rest;
    if (!(magic >> tag >> version) || tag != "HOGMODEL" || version != 1 || (magic >> rest)) {
      throw Error(Errc::BadHeader, "first line must be 'HOGMODEL 1'");
    }
  }
  LinearModel model;
  {
    std::istringstream geo{std::string(lines[1])};
    auto& g = model.geometry;
    std::string norm;
    std::string rest;
    if (!(geo >> g.window_w >> g.window_h >> g.cell >> g.block >> g.block_stride >> g.bins >>
          norm) ||
        (geo >> rest)) {
      throw Error(Errc::BadHeader, "geometry line must be 'window_w window_h cell block "
                                   "block_stride bins normalization'");
    }
    try {
      g.normalization = parse_normalization(norm);
      g.validate();
    } catch (const Error& e) {
      throw Error(Errc::BadHeader, e.what());
    }
  }
  model.bias = parse_real(lines[2], Errc::BadHeader, "bias");
  if (!std::isfinite(model.bias)) throw Error(Errc::NonFiniteWeight, "bias is not finite");

  const std::size_t expected = descriptor_length(model.geometry);
  const std::size_t present = lines.size() - 3;
  if (present != expected) {
    throw Error(Errc::LengthMismatch, "geometry needs " + std::to_string(expected) +
                                          " weights, file has " + std::to_string(present));
  }
  model.weights.reserve(expected);
  for (std::size_t i = 3; i < lines.size(); ++i) {
    const double w = parse_real(lines[i], Errc::BadHeader, "weight");
    if (!std::isfinite(w)) {
      throw Error(Errc::NonFiniteWeight, "weight " + std::to_string(i - 3) + " is not finite");
    }
    model.weights.push_back(w);
  }
  return model;
}

LinearModel load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_model(text);
}

std::string format_model(const LinearModel& model) {
  const auto& g = model.geometry;
  std::string out = "HOGMODEL 1\n";
  out += std::to_string(g.window_w) + " " + std::to_string(g.window_h) + " " +
         std::to_string(g.cell) + " " + std::to_string(g.block) + " " +
         std::to_string(g.block_stride) + " " + std::to_string(g.bins) + " " +
         std::string(normalization_name(g.normalization)) + "\n";
  char buf[64];
  auto put = [&](double v) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    out.append(buf, ptr);
    out += '\n';
  };
  put(model.bias);
  for (double w : model.weights) put(w);
  return out;
}

double score_window(const LinearModel& model, std::span<const double> descriptor) {
  if (descriptor.size() != model.weights.size()) {
    throw Error(Errc::LengthMismatch, "descriptor has " + std::to_string(descriptor.size()) +
                                          " values, model has " +
                                          std::to_string(model.weights.size()) + " weights");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < descriptor.size(); ++i) sum += model.weights[i] * descriptor[i];
  return sum + model.bias;
}

double iou(const Box& a, const Box& b) noexcept {
  const long ix = std::max(0, std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x));
  const long iy = std::max(0, std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y));
  const long inter = ix * iy;
  const long uni = static_cast<long>(a.w) * a.h + static_cast<long>(b.w) * b.h - inter;
  if (inter == 0 || uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<Detection> scan(const IntegralStack& stack, const LinearModel& model, int stride,
                            double threshold, const ScanOptions& options) {
  const auto& g = model.geometry;
  if (stride < 1) throw Error(Errc::InvalidArgument, "scan stride must be >= 1");
  if (model.weights.size() != descriptor_length(g)) {
    throw Error(Errc::LengthMismatch, "model weights do not match its geometry");
  }
  if (g.bins != stack.bins()) {
    throw Error(Errc::InvalidGeometry, "model bins differ from the stack's bins");
  }
  if (g.window_w > stack.width() || g.window_h > stack.height()) {
    throw Error(Errc::WindowLargerThanImage,
                std::to_string(g.window_w) + "x" + std::to_string(g.window_h) +
                    " window does not fit " + std::to_string(stack.width()) + "x" +
                    std::to_string(stack.height()));
  }
  const int cols = window_positions(stack.width(), g.window_w, stride);
  const int rows = window_positions(stack.height(), g.window_h, stride);
  const int workers = std::clamp(options.threads, 1, rows);

  std::optional<CellHistogramCache> cache;
  if (options.use_cache) cache.emplace(stack, g, stride, workers);
  const CellHistogramCache* cache_ptr = cache ? &*cache : nullptr;

  if (workers == 1) return scan_rows(stack, model, cache_ptr, stride, threshold, 0, rows, cols);

  std::vector<std::vector<Detection>> parts(workers);
  {
    std::vector<std::jthread> pool;
    for (int k = 0; k < workers; ++k) {
      pool.emplace_back([&, k] {
        parts[k] = scan_rows(stack, model, cache_ptr, stride, threshold, rows * k / workers,
                             rows * (k + 1) / workers, cols);
      });
    }
  }
  std::vector<Detection> hits;
  for (auto& part : parts) hits.insert(hits.end(), part.begin(), part.end());
  return hits;
}

Image resize_bilinear(const Image& image, int width, int height, double scale) {
  Image out(width, height, image.channels());
  const int sw = image.width();
  const int sh = image.height();
  for (int y = 0; y < height; ++y) {
    const double sy = std::clamp((y + 0.5) * scale - 0.5, 0.0, static_cast<double>(sh - 1));
    const int y0 = static_cast<int>(sy);
    const int y1 = std::min(y0 + 1, sh - 1);
    const double fy = sy - y0;
    for (int x = 0; x < width; ++x) {
      const double sx = std::clamp((x + 0.5) * scale - 0.5, 0.0, static_cast<double>(sw - 1));
      const int x0 = static_cast<int>(sx);
      const int x1 = std::min(x0 + 1, sw - 1);
      const double fx = sx - x0;
      for (int c = 0; c < image.channels(); ++c) {
        const double top = image.at(c, x0, y0) * (1 - fx) + image.at(c, x1, y0) * fx;
        const double bottom = image.at(c, x0, y1) * (1 - fx) + image.at(c, x1, y1) * fx;
        const double v = top * (1 - fy) + bottom * fy;
        out.at(c, x, y) = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
      }
    }
  }
  return out;
}

std::vector<Detection> pyramid_scan(const Image& image, const LinearModel& model,
                                    double scale_step, int stride, double threshold,
                                    const ScanOptions& options) {
  if (!(scale_step > 1.0) || !std::isfinite(scale_step)) {
    throw Error(Errc::InvalidArgument, "scale step must be a finite value > 1");
  }
  const auto& g = model.geometry;
  if (g.window_w > image.width() || g.window_h > image.height()) {
    throw Error(Errc::WindowLargerThanImage,
                std::to_string(g.window_w) + "x" + std::to_string(g.window_h) +
                    " window does not fit " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()));
  }
  const auto lut = OrientationLut::build(g.bins);
  std::vector<Detection> all;
  double scale = 1.0;
  for (int level = 0;; ++level) {
    const int w = level == 0 ? image.width() : static_cast<int>(std::floor(image.width() / scale));
    const int h =
        level == 0 ? image.height() : static_cast<int>(std::floor(image.height() / scale));
    if (w < g.window_w || h < g.window_h || w < 3 || h < 3) break;
    const Image level_image = level == 0 ? image : resize_bilinear(image, w, h, scale);
    const auto stack =
        build_integral_stack(gradient_map(level_image, lut, options.threads), AccWidth::k32);
    for (const auto& d : scan(stack, model, stride, threshold, options)) {
      Detection m = d;
      m.x = static_cast<int>(std::lround(d.x * scale));
      m.y = static_cast<int>(std::lround(d.y * scale));
      m.w = std::min(static_cast<int>(std::lround(d.w * scale)), image.width() - m.x);
      m.h = std::min(static_cast<int>(std::lround(d.h * scale)), image.height() - m.y);
      m.scale = scale;
      all.push_back(m);
    }
    scale *= scale_step;
  }
  return all;
}

std::vector<Detection> nms(std::vector<Detection> detections, double iou_threshold) {
  if (!(iou_threshold >= 0.0 && iou_threshold <= 1.0)) {
    throw Error(Errc::InvalidArgument, "IoU threshold must be in [0, 1]");
  }
  std::stable_sort(detections.begin(), detections.end(),
                   [](const Detection& a, const Detection& b) {
                     if (a.score != b.score) return a.score > b.score;
                     if (a.y != b.y) return a.y < b.y;
                     if (a.x != b.x) return a.x < b.x;
                     return a.scale < b.scale;
                   });
  std::vector<Detection> kept;
  for (const auto& d : detections) {
    const bool keep = std::all_of(kept.begin(), kept.end(), [&](const Detection& k) {
      return iou(d.box(), k.box()) <= iou_threshold;
    });
    if (keep) kept.push_back(d);
  }
  return kept;
}

}  // namespace fasthog
