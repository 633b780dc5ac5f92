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
#include <utility>
#include <vector>

namespace fasthog {

struct SelfCheckOptions {
  int bins = 9;
  int trials = 20;
  std::uint64_t seed = 1;
};

struct SelfCheckResult {
  std::vector<std::pair<std::string, bool>> checks;

  bool passed() const;
};

/// Exhaustive LUT check plus randomized oracle comparisons of every fast path.
SelfCheckResult selfcheck(const SelfCheckOptions& options);

}  // namespace fasthog
