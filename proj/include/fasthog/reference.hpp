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

#include <random>

#include "fasthog/gradient.hpp"
#include "fasthog/image_io.hpp"

namespace fasthog {

/// Orientation map computed pixel by pixel with atan2 and no lookup table.
BinMap reference_gradient_map(const Image& image, int bins);

/// Uniform noise image drawn from rng.
Image random_image(std::mt19937_64& rng, int width, int height, int channels);

}  // namespace fasthog
