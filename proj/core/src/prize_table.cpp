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

#include "cptlottery/prize_table.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "cptlottery/errors.hpp"

namespace cptlottery {

namespace {

// 10^0 .. 10^22 are exact in binary64.
constexpr std::array<double, 23> kPow10 = {
    1e0,  1e1,  1e2,  1e3,  1e4,  1e5,  1e6,  1e7,  1e8,  1e9,  1e10, 1e11,
    1e12, 1e13, 1e14, 1e15, 1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22};

double pow10(int k) {
  if (k >= 0 && k < static_cast<int>(kPow10.size())) return kPow10[k];
  return std::pow(10.0, k);
}

}  // namespace

std::uint64_t PrizeTable::positive_count() const {
  std::uint64_t s = 0;
  for (const auto& b : buckets) s += b.count;
  return s;
}

int decade_index(double prize) {
  if (!(prize > 0.0)) throw DomainError("decade_index: prize must be positive");
  if (prize <= 10.0) return 0;
  int k = static_cast<int>(std::floor(std::log10(prize)));
  // Fix up log10 rounding at the edges so that 10^k lands in bucket k - 1.
  while (k > 0 && prize <= pow10(k)) --k;
  while (prize > pow10(k + 1)) ++k;
  return k;
}

PrizeTable expand_design(const DesignResult& design) {
  if (design.status == DesignStatus::kUnbounded) {
    throw StateError("expand_design: design is unbounded");
  }
  PrizeTable t;
  t.n = design.n;
  t.gain_ratio = design.gain_ratio();
  t.profit = design.profit;
  std::vector<std::uint64_t> counts;
  const double price = design.ticket_price;
  auto tally = [&](double outcome, std::uint64_t count) {
    if (count == 0) return;
    const double prize = outcome + price;
    if (!(prize > 0.0)) {
      t.zero_count += count;
      return;
    }
    const auto k = static_cast<std::size_t>(decade_index(prize));
    if (counts.size() <= k) counts.resize(k + 1, 0);
    counts[k] += count;
    t.max_prize = std::max(t.max_prize, prize);
  };
  for (const auto& l : design.loss_levels) tally(l.outcome, l.count);
  design.gain.for_each_level(tally);

  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double lo = k == 0 ? 0.0 : pow10(static_cast<int>(k));
    t.buckets.push_back({lo, pow10(static_cast<int>(k) + 1), counts[k]});
  }
  return t;
}

double design_expected_utility(const DesignResult& design) {
  if (design.status == DesignStatus::kUnbounded) {
    throw StateError("design_expected_utility: design is unbounded");
  }
  UtilityAccumulator acc(design.params, design.n);
  for (const auto& l : design.loss_levels) acc.add(l.outcome, l.count);
  design.gain.for_each_level(
      [&](double outcome, std::uint64_t count) { acc.add(outcome, count); });
  if (acc.tickets_seen() != design.n) {
    throw StateError("design_expected_utility: ticket count mismatch");
  }
  return acc.value();
}

}  // namespace cptlottery
