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

#include <random>

#include "doctest.h"
#include "fasthog/error.hpp"
#include "fasthog/gradient.hpp"
#include "oracles.hpp"

using namespace fasthog;

TEST_CASE("bin_of on the axes") {
  CHECK(bin_of(1, 0, 8) == 0);
  CHECK(bin_of(0, 1, 8) == 2);
  CHECK(bin_of(-1, 0, 8) == 4);
  CHECK(bin_of(0, -1, 8) == 6);
  CHECK(bin_of(0, 0, 8) == kNoBin);
}

TEST_CASE("bin_of frozen values") {
  // Expected bins from a 50-digit atan2 evaluation.
  struct Case {
    int dx, dy, bins, bin;
  };
  const Case cases[] = {
      {255, 255, 8, 1},  {3, 1, 9, 0},      {1, 3, 9, 1},     {-2, 5, 9, 2},
      {7, -1, 9, 8},     {-255, -254, 8, 4}, {-255, -255, 8, 5}, {100, -100, 4, 3},
      {0, -7, 4, 3},     {-5, 0, 9, 4},     {1, -1, 8, 7},    {-1, 1, 8, 3},
      {17, -40, 18, 14}, {255, -1, 9, 8},   {120, 37, 64, 3},
  };
  for (const auto& c : cases) {
    CAPTURE(c.dx);
    CAPTURE(c.dy);
    CAPTURE(c.bins);
    CHECK(bin_of(c.dx, c.dy, c.bins) == c.bin);
    CHECK(oracle::bin(c.dx, c.dy, c.bins) == c.bin);
  }
}

TEST_CASE("bin_of matches the boundary-counting oracle everywhere") {
  for (int bins : {2, 3, 4, 6, 8, 9, 16, 18, 36, 64}) {
    CAPTURE(bins);
    int mismatches = 0;
    for (int dx = -kMaxDelta; dx <= kMaxDelta; ++dx) {
      for (int dy = -kMaxDelta; dy <= kMaxDelta; ++dy) {
        mismatches += bin_of(dx, dy, bins) != oracle::bin(dx, dy, bins);
      }
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("lookup table equals bin_of on all 261121 entries") {
  for (int bins : {2, 8, 9, 64}) {
    const auto lut = OrientationLut::build(bins);
    CHECK(lut.bins() == bins);
    CHECK(lut.table().size() == 261121);
    CHECK(lut.lookup(0, 0) == kNoBin);
    bool all = true;
    for (int dx = -kMaxDelta; dx <= kMaxDelta; ++dx) {
      for (int dy = -kMaxDelta; dy <= kMaxDelta; ++dy) {
        all = all && lut.lookup(dx, dy) == bin_of(dx, dy, bins);
      }
    }
    CHECK(all);
  }
  CHECK(OrientationLut::build(8).lookup(1, 0) == 0);
}

TEST_CASE("lookup table bin count range") {
  for (int bad : {1, 0, -3, 65}) {
    try {
      OrientationLut::build(bad);
      FAIL("accepted bins=" << bad);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::BinCountOutOfRange);
    }
  }
}

TEST_CASE("opposite gradients are half a turn apart") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-255, 255);
  for (int bins : {2, 4, 8, 18, 64}) {
    int tested = 0;
    while (tested < 5000) {
      const int dx = d(rng);
      const int dy = d(rng);
      if ((dx == 0 && dy == 0) || oracle::boundary_distance(dx, dy, bins) < 1e-9L) continue;
      ++tested;
      const int a = bin_of(dx, dy, bins);
      const int b = bin_of(-dx, -dy, bins);
      CHECK((b - a + bins) % bins == bins / 2);
    }
  }
}

TEST_CASE("constant image has no orientations") {
  Image img(10, 7, 3);
  for (int c = 0; c < 3; ++c) {
    for (auto& v : img.plane(c)) v = 128;
  }
  const auto map = gradient_map(img, OrientationLut::build(9));
  for (auto b : map.cells()) CHECK(b == kNoBin);
}

TEST_CASE("central difference on a 3x3 image") {
  // Every row is [10 20 40]: dx = 40 - 10 = 30 at the centre, dy = 0.
  const Image img(3, 3, 1, {10, 20, 40, 10, 20, 40, 10, 20, 40});
  for (int bins : {4, 8, 9}) {
    const auto map = gradient_map(img, OrientationLut::build(bins));
    CHECK(map.at(1, 1) == bin_of(30, 0, bins));
    CHECK(map.at(1, 1) == 0);
  }
  // Vertical ramp: dy = 40 - 10, pointing to +y.
  const Image vert(3, 3, 1, {10, 10, 10, 20, 20, 20, 40, 40, 40});
  CHECK(gradient_map(vert, OrientationLut::build(8)).at(1, 1) == 2);
}

TEST_CASE("borders are never binned") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> s(0, 255);
  Image img(13, 9, 1);
  for (auto& v : img.plane(0)) v = static_cast<std::uint8_t>(s(rng));
  const auto map = gradient_map(img, OrientationLut::build(9));
  for (int x = 0; x < 13; ++x) {
    CHECK(map.at(x, 0) == kNoBin);
    CHECK(map.at(x, 8) == kNoBin);
  }
  for (int y = 0; y < 9; ++y) {
    CHECK(map.at(0, y) == kNoBin);
    CHECK(map.at(12, y) == kNoBin);
  }
}

TEST_CASE("strongest channel wins, ties to the lowest channel") {
  Image img(3, 3, 3);
  // Channel 0: dx = +50. Channel 1: dy = +50 (same magnitude). Channel 2: dx = -10.
  img.at(0, 2, 1) = 50;
  img.at(1, 1, 2) = 50;
  img.at(2, 0, 1) = 10;
  const auto lut = OrientationLut::build(8);
  CHECK(gradient_map(img, lut).at(1, 1) == 0);

  img.at(2, 0, 1) = 80;  // channel 2 now strongest: dx = -80
  CHECK(gradient_map(img, lut).at(1, 1) == 4);
}

TEST_CASE("gradient map equals per-pixel brute force") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> s(0, 255);
  for (int channels : {1, 3}) {
    for (int bins : {8, 9}) {
      Image img(32, 32, channels);
      for (int c = 0; c < channels; ++c) {
        for (auto& v : img.plane(c)) v = static_cast<std::uint8_t>(s(rng));
      }
      const auto map = gradient_map(img, OrientationLut::build(bins));
      const auto expected = oracle::gradient_bins(img, bins);
      bool same = true;
      for (std::size_t i = 0; i < expected.size(); ++i) same = same && map.cells()[i] == expected[i];
      CHECK(same);
    }
  }
}

TEST_CASE("interior pixels are unbinned only for zero gradients") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> s(0, 1);  // binary samples make zero gradients common
  Image img(40, 30, 3);
  for (int c = 0; c < 3; ++c) {
    for (auto& v : img.plane(c)) v = static_cast<std::uint8_t>(s(rng));
  }
  const auto map = gradient_map(img, OrientationLut::build(9));
  int unbinned = 0;
  for (int y = 1; y < 29; ++y) {
    for (int x = 1; x < 39; ++x) {
      bool flat = true;
      for (int c = 0; c < 3; ++c) {
        flat = flat && img.at(c, x + 1, y) == img.at(c, x - 1, y) &&
               img.at(c, x, y + 1) == img.at(c, x, y - 1);
      }
      CHECK((map.at(x, y) == kNoBin) == flat);
      unbinned += flat;
    }
  }
  CHECK(unbinned > 0);
}

TEST_CASE("threaded gradient map is identical and repeatable") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> s(0, 255);
  Image img(57, 41, 3);
  for (int c = 0; c < 3; ++c) {
    for (auto& v : img.plane(c)) v = static_cast<std::uint8_t>(s(rng));
  }
  const auto lut = OrientationLut::build(9);
  const auto serial = gradient_map(img, lut);
  CHECK(serial == gradient_map(img, lut));
  CHECK(serial == gradient_map(img, lut, 3));
  CHECK(serial == gradient_map(img, lut, 100));
}

TEST_CASE("images smaller than 3x3 are rejected") {
  const auto lut = OrientationLut::build(9);
  try {
    gradient_map(Image(2, 5, 1), lut);
    FAIL("accepted 2x5");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ImageTooSmall);
  }
  CHECK_THROWS_AS(gradient_map(Image(5, 2, 1), lut), Error);
}
