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

// Prize tables: a design expanded ticket by ticket into decade buckets.

#include <cstdint>
#include <vector>

#include "cptlottery/design.hpp"

namespace cptlottery {

struct PrizeBucket {
  double lo = 0.0;  // exclusive
  double hi = 0.0;  // inclusive
  std::uint64_t count = 0;

  friend bool operator==(const PrizeBucket&, const PrizeBucket&) = default;
};

struct PrizeTable {
  // (0, 10], (10, 100], ... up to the top nonempty decade, ascending.
  std::vector<PrizeBucket> buckets;
  std::uint64_t zero_count = 0;
  std::uint64_t n = 0;
  double max_prize = 0.0;
  double gain_ratio = 0.0;
  double profit = 0.0;

  [[nodiscard]] std::uint64_t positive_count() const;
  [[nodiscard]] std::uint64_t total() const {
    return positive_count() + zero_count;
  }
};

// Index of the decade bucket holding a positive prize: 0 for (0, 10],
// k for (10^k, 10^(k+1)].
[[nodiscard]] int decade_index(double prize);

// Streams every ticket's prize (outcome + ticket price) into buckets.
// Throws StateError for an unbounded design.
[[nodiscard]] PrizeTable expand_design(const DesignResult& design);

// Buyer's CPT expected utility of one ticket of the design, streamed level by
// level with integer cumulative counts.
[[nodiscard]] double design_expected_utility(const DesignResult& design);

}  // namespace cptlottery
