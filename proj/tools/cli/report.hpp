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

// Design reports: a flat, serializable summary of a design and its prize
// table, rendered as a text table, JSON or CSV.

#include <cstdint>
#include <string>
#include <vector>

#include "cptlottery/cpt.hpp"
#include "cptlottery/design.hpp"
#include "cptlottery/prize_table.hpp"
#include "json.hpp"

namespace cptlottery::cli {

struct Report {
  CptParams params;
  std::uint64_t n = 0;
  std::uint64_t n_minus = 0;
  std::uint64_t n_plus = 0;
  double ticket_price = 0.0;
  double v_star = 0.0;
  double profit = 0.0;
  double max_prize = 0.0;
  double gain_ratio = 0.0;
  std::string status = "zero";
  std::vector<PrizeBucket> buckets;  // ascending
  std::uint64_t zero_count = 0;
  double timing_ms = 0.0;

  friend bool operator==(const Report&, const Report&) = default;
};

// Unbounded designs carry no prize table.
[[nodiscard]] Report make_report(const DesignResult& design,
                                 const PrizeTable* table, double timing_ms);

[[nodiscard]] nlohmann::json to_json(const Report& report);
[[nodiscard]] Report report_from_json(const nlohmann::json& j);

// Prize | Number | Odds, highest decade first, followed by a summary block.
[[nodiscard]] std::string render_table(const Report& report);
[[nodiscard]] std::string render_csv(const Report& report);

// 1234567 -> "1,234,567".
[[nodiscard]] std::string group_thousands(std::uint64_t value);
// n / count with two decimals and grouped digits: "1 in 3.18".
[[nodiscard]] std::string format_odds(std::uint64_t n, std::uint64_t count);

}  // namespace cptlottery::cli
