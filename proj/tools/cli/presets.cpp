// Copyright 2026 The cptlottery Authors
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

#include "cli/presets.hpp"

#include <algorithm>

namespace cptlottery::cli {

const std::vector<Preset>& presets() {
  static const std::vector<Preset> kPresets = {
      {"canada", {0.42, 0.83, 1.62, 0.44, 0.60}, 1'000'000'000, std::nullopt},
      {"usa", {0.42, 0.49, 1.36, 0.44, 0.71}, 1'000'000'000, std::nullopt},
      {"greece", {0.50, 0.30, 1.29, 0.44, 0.82}, 1'000'000'000, 2.0},
  };
  return kPresets;
}

std::optional<Preset> find_preset(std::string_view name) {
  const auto& all = presets();
  auto it = std::find_if(all.begin(), all.end(),
                         [&](const Preset& p) { return p.name == name; });
  if (it == all.end()) return std::nullopt;
  return *it;
}

}  // namespace cptlottery::cli
