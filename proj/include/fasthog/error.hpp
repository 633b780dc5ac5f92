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

#include <stdexcept>
#include <string>
#include <string_view>

namespace fasthog {

enum class Errc {
  // image_io
  UnsupportedMagic,
  MaxvalNot255,
  TruncatedData,
  NonNumericToken,
  InvalidDimensions,
  SampleOutOfRange,
  // gradient
  BinCountOutOfRange,
  ImageTooSmall,
  // integral
  AccumulatorOverflowRisk,
  BinOutOfRange,
  RectOutOfBounds,
  // descriptor
  InvalidGeometry,
  WindowOutOfBounds,
  // detector
  BadHeader,
  LengthMismatch,
  NonFiniteWeight,
  WindowLargerThanImage,
  // bench
  NoValidWindows,
  PathMismatch,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library. what() is "<ErrcName>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fasthog
