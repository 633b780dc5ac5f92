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
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fasthog {

/// 8-bit image with 1 or 3 channels stored channel-planar: all of channel 0
/// row-major, then channel 1, then channel 2.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels);
  Image(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return data_.empty(); }

  std::uint8_t at(int c, int x, int y) const noexcept {
    return data_[plane_offset(c) + static_cast<std::size_t>(y) * width_ + x];
  }
  std::uint8_t& at(int c, int x, int y) noexcept {
    return data_[plane_offset(c) + static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const std::uint8_t> plane(int c) const noexcept {
    return {data_.data() + plane_offset(c), plane_size()};
  }
  std::span<std::uint8_t> plane(int c) noexcept {
    return {data_.data() + plane_offset(c), plane_size()};
  }

  std::span<const std::uint8_t> data() const noexcept { return data_; }

  bool operator==(const Image&) const = default;

 private:
  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(width_) * height_;
  }
  std::size_t plane_offset(int c) const noexcept { return plane_size() * c; }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> data_;
};

/// Parses P2/P3 (ASCII) and P5/P6 (raw) anymaps with maxval 255.
Image decode_pnm(std::span<const std::uint8_t> bytes);

/// Raw P5 stream of a single-channel image.
std::vector<std::uint8_t> encode_pgm(const Image& plane);

/// Raw P6 stream; single-channel input is replicated into RGB.
std::vector<std::uint8_t> encode_ppm(const Image& image);

Image read_pnm_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace fasthog
