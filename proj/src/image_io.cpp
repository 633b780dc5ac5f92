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

#include "fasthog/image_io.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <string_view>

#include "fasthog/error.hpp"

namespace fasthog {

Image::Image(int width, int height, int channels)
    : Image(width, height, channels,
            std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height * channels, 0)) {}

Image::Image(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  if (width <= 0 || height <= 0) {
    throw Error(Errc::InvalidDimensions, "image dimensions must be positive");
  }
  if (channels != 1 && channels != 3) {
    throw Error(Errc::InvalidDimensions, "channels must be 1 or 3");
  }
  if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw Error(Errc::InvalidDimensions, "data length does not match width*height*channels");
  }
}

namespace {

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class Cursor {
 public:
  explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  long read_uint(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) {
      throw Error(Errc::TruncatedData, std::string("missing ") + what);
    }
    std::size_t end = pos_;
    while (end < bytes_.size() && !is_space(bytes_[end]) && bytes_[end] != '#') ++end;
    const auto* first = reinterpret_cast<const char*>(bytes_.data() + pos_);
    const auto* last = reinterpret_cast<const char*>(bytes_.data() + end);
    long value = 0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || value < 0) {
      throw Error(Errc::NonNumericToken,
                  std::string("bad ") + what + " token '" + std::string(first, last) + "'");
    }
    pos_ = end;
    return value;
  }

  // Raw rasters start after exactly one whitespace byte following maxval.
  void consume_single_space() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
      throw Error(Errc::TruncatedData, "missing whitespace before raster");
    }
    ++pos_;
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    if (bytes_.size() - pos_ < n) {
      throw Error(Errc::TruncatedData, "raster has " + std::to_string(bytes_.size() - pos_) +
                                           " bytes, expected " + std::to_string(n));
    }
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> header(char kind, int width, int height) {
  std::string h = std::string("P") + kind + "\n" + std::to_string(width) + " " +
                  std::to_string(height) + "\n255\n";
  return {h.begin(), h.end()};
}

}  // namespace

Image decode_pnm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw Error(Errc::UnsupportedMagic, "not a portable anymap");
  }
  const char kind = static_cast<char>(bytes[1]);
  bool ascii = false;
  int channels = 0;
  switch (kind) {
    case '2': ascii = true; channels = 1; break;
    case '3': ascii = true; channels = 3; break;
    case '5': channels = 1; break;
    case '6': channels = 3; break;
    default:
      throw Error(Errc::UnsupportedMagic, std::string("P") + kind + " is not supported");
  }

  Cursor cur(bytes);
  cur.advance(2);
  const long width = cur.read_uint("width");
  const long height = cur.read_uint("height");
  if (width == 0 || height == 0 || width > (1 << 20) || height > (1 << 20)) {
    throw Error(Errc::InvalidDimensions,
                std::to_string(width) + "x" + std::to_string(height) + " is not a usable size");
  }
  const long maxval = cur.read_uint("maxval");
  if (maxval != 255) {
    throw Error(Errc::MaxvalNot255, "maxval is " + std::to_string(maxval));
  }

  const auto w = static_cast<int>(width);
  const auto h = static_cast<int>(height);
  const std::size_t pixels = static_cast<std::size_t>(w) * h;
  std::vector<std::uint8_t> planar(pixels * channels);

  // Files interleave channels per pixel; storage is planar.
  auto store = [&](std::size_t sample_index, std::uint8_t value) {
    const std::size_t pixel = sample_index / channels;
    const std::size_t c = sample_index % channels;
    planar[c * pixels + pixel] = value;
  };

  if (ascii) {
    for (std::size_t i = 0; i < pixels * channels; ++i) {
      const long v = cur.read_uint("sample");
      if (v > 255) {
        throw Error(Errc::SampleOutOfRange, "sample " + std::to_string(v) + " exceeds maxval");
      }
      store(i, static_cast<std::uint8_t>(v));
    }
  } else {
    cur.consume_single_space();
    auto raster = cur.take(pixels * channels);
    for (std::size_t i = 0; i < raster.size(); ++i) store(i, raster[i]);
  }
  return Image(w, h, channels, std::move(planar));
}

std::vector<std::uint8_t> encode_pgm(const Image& plane) {
  if (plane.channels() != 1 || plane.empty()) {
    throw Error(Errc::InvalidArgument, "encode_pgm needs a nonempty single-channel image");
  }
  auto out = header('5', plane.width(), plane.height());
  auto raster = plane.plane(0);
  out.insert(out.end(), raster.begin(), raster.end());
  return out;
}

std::vector<std::uint8_t> encode_ppm(const Image& image) {
  if (image.empty()) throw Error(Errc::InvalidArgument, "encode_ppm needs a nonempty image");
  auto out = header('6', image.width(), image.height());
  out.reserve(out.size() + static_cast<std::size_t>(image.width()) * image.height() * 3);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        out.push_back(image.at(image.channels() == 3 ? c : 0, x, y));
      }
    }
  }
  return out;
}

Image read_pnm_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_pnm(bytes);
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace fasthog
