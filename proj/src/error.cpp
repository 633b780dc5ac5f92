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

#include "fasthog/error.hpp"

namespace fasthog {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UnsupportedMagic: return "UnsupportedMagic";
    case Errc::MaxvalNot255: return "MaxvalNot255";
    case Errc::TruncatedData: return "TruncatedData";
    case Errc::NonNumericToken: return "NonNumericToken";
    case Errc::InvalidDimensions: return "InvalidDimensions";
    case Errc::SampleOutOfRange: return "SampleOutOfRange";
    case Errc::BinCountOutOfRange: return "BinCountOutOfRange";
    case Errc::ImageTooSmall: return "ImageTooSmall";
    case Errc::AccumulatorOverflowRisk: return "AccumulatorOverflowRisk";
    case Errc::BinOutOfRange: return "BinOutOfRange";
    case Errc::RectOutOfBounds: return "RectOutOfBounds";
    case Errc::InvalidGeometry: return "InvalidGeometry";
    case Errc::WindowOutOfBounds: return "WindowOutOfBounds";
    case Errc::BadHeader: return "BadHeader";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::NonFiniteWeight: return "NonFiniteWeight";
    case Errc::WindowLargerThanImage: return "WindowLargerThanImage";
    case Errc::NoValidWindows: return "NoValidWindows";
    case Errc::PathMismatch: return "PathMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

}  // namespace fasthog
