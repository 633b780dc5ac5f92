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

#include "fasthog/reference.hpp"

namespace fasthog {

BinMap reference_gradient_map(const Image& image, int bins) {
  BinMap out(image.width(), image.height(), bins);
  for (int y = 1; y + 1 < image.height(); ++y) {
    for (int x = 1; x + 1 < image.width(); ++x) {
      int best_dx = 0;
      int best_dy = 0;
      int best_mag = -1;
      for (int c = 0; c < image.channels(); ++c) {
        const int dx = image.at(c, x + 1, y) - image.at(c, x - 1, y);
        const int dy = image.at(c, x, y + 1) - image.at(c, x, y - 1);
        if (dx * dx + dy * dy > best_mag) {
          best_mag = dx * dx + dy * dy;
          best_dx = dx;
          best_dy = dy;
        }
      }
      out.at(x, y) = bin_of(best_dx, best_dy, bins);
    }
  }
  return out;
}

Image random_image(std::mt19937_64& rng, int width, int height, int channels) {
  std::uniform_int_distribution<int> sample(0, 255);
  std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height * channels);
  for (auto& v : data) v = static_cast<std::uint8_t>(sample(rng));
  return Image(width, height, channels, std::move(data));
}

}  // namespace fasthog
