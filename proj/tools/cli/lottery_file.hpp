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

// Lottery files: CSV with header "outcome,count", one level per row.
// Outcomes are net of the ticket price; counts are positive integers.

#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cptlottery/cpt.hpp"
#include "cptlottery/design.hpp"

namespace cptlottery::cli {

struct LotteryLevel {
  double outcome = 0.0;
  std::uint64_t count = 0;
};

class LotteryFileError : public std::runtime_error {
 public:
  LotteryFileError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

[[nodiscard]] std::vector<LotteryLevel> read_lottery_csv(std::istream& in);

// Writes every level of a design in ascending outcome order.
void write_lottery_csv(std::ostream& out, const DesignResult& design);

struct LotteryEvaluation {
  std::uint64_t n = 0;
  double expected_utility = 0.0;  // per ticket
  double seller_profit = 0.0;     // minus the sum of all outcomes
};

// Levels may come in any order.
[[nodiscard]] LotteryEvaluation evaluate_lottery(
    const CptParams& params, std::vector<LotteryLevel> levels);

}  // namespace cptlottery::cli
