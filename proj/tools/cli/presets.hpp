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

#pragma once

// Buyer parameter presets estimated for national lottery markets.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cptlottery/cpt.hpp"

namespace cptlottery::cli {

struct Preset {
  std::string name;
  CptParams params;
  std::uint64_t default_n = 1'000'000'000;
  std::optional<double> price;  // fixed ticket price, if the market has one
};

[[nodiscard]] const std::vector<Preset>& presets();
[[nodiscard]] std::optional<Preset> find_preset(std::string_view name);

}  // namespace cptlottery::cli
