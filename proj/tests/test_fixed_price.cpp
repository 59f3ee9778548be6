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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cptlottery/compensated_sum.hpp"
#include "cptlottery/design.hpp"
#include "cptlottery/errors.hpp"
#include "cptlottery/fixed_price.hpp"
#include "cptlottery/loss_solver.hpp"
#include "cptlottery/prize_table.hpp"
#include "test_support.hpp"

namespace cptlottery {
namespace {

using testing::kCanada;
using testing::kGreece;
using testing::kUsa;
using testing::rel_diff;

TEST(YMinTest, GreeceAtTwo) {
  EXPECT_LE(rel_diff(y_min(kGreece, -2.0), 1.588176293214942), 1e-15);
  EXPECT_DOUBLE_EQ(y_min(kCanada, -1.0), kCanada.lambda);
}

TEST(BoundedLossTest, FeasibleAndBeatsRandomPoints) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const CptParams p = testing::random_params(rng);
    const std::uint64_t m = 1 + rng() % 6;
    const std::uint64_t n = m + rng() % 10;
    const auto h = uniform_loss_weights(p.gamma_minus, m, n);
    const double ymin = std::exp(testing::uniform(rng, -1, 1));
    const double v = testing::uniform(rng, 0.0, 1.0) * ymin * compensated_sum(h);
    const BoundedLossSolution s = solve_loss_bounded(p, h, v, ymin);
    CompensatedSum hy;
    for (std::size_t i = 0; i < m; ++i) {
      ASSERT_LE(s.y[i], ymin);
      ASSERT_GE(s.y[i], 0.0);
      if (i > 0) {
        ASSERT_LE(s.y[i], s.y[i - 1]);
      }
      hy += h[i] * s.y[i];
    }
    EXPECT_LE(std::abs(hy.value() - v), 1e-12 * std::max(v, 1e-300));
    const double best = loss_objective(p, s.y);
    for (int r = 0; r < 300; ++r) {
      std::vector<double> y(m);
      for (auto& t : y) t = testing::uniform(rng, 0.0, ymin);
      std::sort(y.rbegin(), y.rend());
      double mass = 0.0;
      for (std::size_t i = 0; i < m; ++i) mass += h[i] * y[i];
      const double scale = v / mass;
      if (y.front() * scale > ymin) continue;
      for (auto& t : y) t *= scale;
      EXPECT_GE(loss_objective(p, y), best - 1e-12 * std::abs(best)) << trial;
    }
  }
}

TEST(BoundedLossTest, RejectsInfeasibleBudget) {
  const auto h = uniform_loss_weights(0.6, 4, 10);
  EXPECT_THROW((void)solve_loss_bounded(kCanada, h, 10.0, 1.0), InfeasibleError);
  EXPECT_THROW((void)solve_loss_bounded(kCanada, h, -1.0, 1.0), InfeasibleError);
  EXPECT_THROW((void)solve_loss_bounded(kCanada, h, 0.1, 0.0), DomainError);
  const BoundedLossSolution full =
      solve_loss_bounded(kCanada, h, compensated_sum(h), 1.0);
  for (double y : full.y) EXPECT_DOUBLE_EQ(y, 1.0);
}

TEST(FixedPriceTest, UsaThousandTickets) {
  const DesignResult d = design_fixed_price(kUsa, 1000, -2.0);
  ASSERT_EQ(d.status, DesignStatus::kFinite);
  EXPECT_EQ(d.n_plus, 576u);
  EXPECT_EQ(d.ticket_price, 2.0);
  EXPECT_NEAR(d.max_prize(), 312.41, 0.02);
  EXPECT_NEAR(d.profit, 339.80, 0.05);
  const PrizeTable t = expand_design(d);
  EXPECT_EQ(t.positive_count(), 576u);
  EXPECT_EQ(t.zero_count, 424u);
  // No loss exceeds the price.
  for (const auto& l : d.loss_levels) EXPECT_GE(l.outcome, -2.0);
  EXPECT_LE(std::abs(design_expected_utility(d)),
            1e-9 * std::max(1.0, std::abs(value(kUsa, 2.0))));
}

TEST(FixedPriceTest, ThreadsGiveIdenticalResults) {
  const DesignResult a = design_fixed_price(kUsa, 300, -2.0, 1);
  const DesignResult b = design_fixed_price(kUsa, 300, -2.0, 3);
  EXPECT_EQ(a.n_plus, b.n_plus);
  EXPECT_EQ(a.profit, b.profit);
  EXPECT_EQ(a.v_star, b.v_star);
}

TEST(FixedPriceTest, FastPathMatchesGeneralPath) {
  for (std::uint64_t n : {3ull, 50ull, 700ull}) {
    const DesignResult a = design_fixed_price(kGreece, n, -2.0);
    const DesignResult b = design_fixed_price_fast(kGreece, n, -2.0);
    EXPECT_EQ(a.n_plus, b.n_plus) << n;
    EXPECT_LE(rel_diff(a.profit, b.profit), 1e-9) << n;
    EXPECT_LE(rel_diff(a.max_prize(), b.max_prize()), 1e-9) << n;
  }
  EXPECT_THROW((void)design_fixed_price_fast(kCanada, 10, -2.0),
               PreconditionError);
}

TEST(FixedPriceTest, LooseCapMatchesUnconstrainedProfit) {
  // A price far above the unconstrained optimum never binds.
  const DesignResult u = design_optimal(kCanada, 60);
  const DesignResult f = design_fixed_price(kCanada, 60, -1e4);
  EXPECT_LT(u.ticket_price, 1e4);
  EXPECT_GE(f.profit, u.profit * (1 - 1e-9));
}

TEST(FixedPriceTest, TightCapReducesProfit) {
  const DesignResult u = design_optimal(kCanada, 200);
  const DesignResult f = design_fixed_price(kCanada, 200, -0.5 * u.ticket_price);
  EXPECT_LT(f.profit, u.profit);
  EXPECT_GE(f.profit, 0.0);
  for (const auto& l : f.loss_levels) {
    EXPECT_GE(l.outcome, -0.5 * u.ticket_price * (1 + 1e-15));
  }
}

TEST(FixedPriceTest, InputValidation) {
  EXPECT_THROW((void)design_fixed_price(kUsa, 1, -2.0), DomainError);
  EXPECT_THROW((void)design_fixed_price(kUsa, 10, 2.0), DomainError);
  EXPECT_THROW((void)design_fixed_price(kUsa, 10, 0.0), DomainError);
}

}  // namespace
}  // namespace cptlottery
