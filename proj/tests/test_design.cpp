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

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cptlottery/design.hpp"
#include "cptlottery/errors.hpp"
#include "cptlottery/gain_solver.hpp"
#include "cptlottery/loss_solver.hpp"
#include "test_support.hpp"

namespace cptlottery {
namespace {

using testing::kCanada;
using testing::kGreece;
using testing::kUsa;
using testing::rel_diff;

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(MidOptimumTest, FrozenUnitCoefficients) {
  const MidOptimum m = mid_optimum(1.0, 1.0, kCanada);
  EXPECT_EQ(m.status, DesignStatus::kFinite);
  EXPECT_LE(rel_diff(m.v_star, 0.56036804923821604), 1e-13);
  EXPECT_LE(rel_diff(m.F, -0.24584513908837666), 1e-13);
}

TEST(MidOptimumTest, FrozenWithEpsilon) {
  const MidOptimum m = mid_optimum_eps(1.0, 1.0, kCanada, 0.1);
  EXPECT_EQ(m.status, DesignStatus::kFinite);
  EXPECT_LE(rel_diff(m.v_star, 0.44076543843941398), 1e-10);
  EXPECT_LE(rel_diff(m.F, -0.14130857410462923), 1e-12);
  EXPECT_THROW((void)mid_optimum_eps(1.0, 1.0, kCanada, -0.1), DomainError);
}

TEST(MidOptimumTest, EpsilonZeroMatchesClosedForm) {
  const MidOptimum a = mid_optimum_eps(2.0, 3.0, kCanada, 0.0);
  const MidOptimum b = mid_optimum(2.0, 3.0, kCanada);
  EXPECT_EQ(a.F, b.F);
  EXPECT_EQ(a.v_star, b.v_star);
}

TEST(MidOptimumTest, Regimes) {
  const CptParams eq{0.5, 0.5, 1.0, 0.5, 0.5};
  EXPECT_EQ(mid_optimum(2.0, 1.0, eq).status, DesignStatus::kZero);
  EXPECT_EQ(mid_optimum(1.0, 1.0, eq).status, DesignStatus::kZero);
  EXPECT_EQ(mid_optimum(1.0, 2.0, eq).status, DesignStatus::kUnbounded);
  const MidOptimum g = mid_optimum(5.0, 0.1, kGreece);
  EXPECT_EQ(g.status, DesignStatus::kUnbounded);
  EXPECT_EQ(g.F, -kInf);
  EXPECT_EQ(mid_optimum(1.0, 0.0, kCanada).status, DesignStatus::kZero);
  // With eps > 0 the buyer must be paid, so F is positive without losses.
  const MidOptimum e = mid_optimum_eps(2.0, 0.0, kCanada, 0.5);
  EXPECT_EQ(e.status, DesignStatus::kFinite);
  EXPECT_DOUBLE_EQ(e.F, 2.0 * std::pow(0.5, kCanada.balpha()));
}

TEST(MidOptimumTest, GridCheckOnLogScale) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const CptParams p = testing::random_params_alpha_lt_beta(rng);
    const double cp = std::exp(testing::uniform(rng, -3, 3));
    const double cm = std::exp(testing::uniform(rng, -3, 3));
    const MidOptimum m = mid_optimum(cp, cm, p);
    auto F = [&](double v) {
      return cp * std::pow(v, p.balpha()) - cm * std::pow(v, p.bbeta());
    };
    EXPECT_LE(rel_diff(F(m.v_star), m.F), 1e-11);
    for (double f : {0.9, 0.99, 1.01, 1.1}) {
      EXPECT_GE(F(m.v_star * f), m.F) << trial;
    }
  }
}

TEST(FullLossCoeffTest, MatchesGenericSolver) {
  for (std::uint64_t m : {1ull, 5ull, 40ull}) {
    const auto h = uniform_loss_weights(kCanada.gamma_minus, m, 50);
    EXPECT_LE(rel_diff(full_loss_coeff(kCanada, m, 50),
                       loss_value_coeff(kCanada, h, m)),
              1e-13);
  }
}

TEST(GainSweepTest, MatchesLiteralScanAndTable) {
  for (const CptParams& p : {kCanada, kUsa, kGreece}) {
    for (std::uint64_t n : {2ull, 7ull, 100ull, 1000ull}) {
      GainSweep sweep(p, n);
      const GainTable table = precompute_gain_table(p, n);
      for (std::uint64_t k = 1; k <= n; ++k) {
        sweep.advance();
        const auto h = uniform_gain_weights(p.gamma_plus, k, n);
        const std::size_t J = transitional_index(h);
        ASSERT_EQ(sweep.J(), J) << "n " << n << " k " << k;
        ASSERT_EQ(table.J_of[k], J);
        EXPECT_TRUE(sweep.index_is_minimal());
        const double c = gain_value_coeff(p, h, J);
        EXPECT_LE(rel_diff(sweep.c_plus(), c), 1e-11) << k;
        EXPECT_LE(rel_diff(table.c_plus_of[k], c), 1e-11) << k;
        EXPECT_LE(rel_diff(table.head_mass(k), sweep.head_mass()), 1e-15);
      }
      EXPECT_LE(sweep.cursor_moves(), 2 * n);
      EXPECT_THROW(sweep.advance(), StateError);
    }
  }
}

TEST(GainSweepTest, TransitionalIndexIsMonotone) {
  GainSweep sweep(kCanada, 100000);
  std::uint64_t last = 0;
  for (std::uint64_t k = 1; k <= 100000; ++k) {
    sweep.advance();
    ASSERT_GE(sweep.J(), last);
    last = sweep.J();
  }
  EXPECT_THROW(GainSweep(kCanada, 0), DomainError);
}

TEST(GainProfileTest, LevelsReproduceSolver) {
  const std::uint64_t n = 40, k = 25;
  const auto h = uniform_gain_weights(kCanada.gamma_plus, k, n);
  const GainSolution s = solve_gain(kCanada, h, 2.5);
  const GainTable t = precompute_gain_table(kCanada, n);
  const GainProfile g = GainProfile::make(kCanada, n, k, t.J_of[k],
                                          t.head_mass(k), t.tail_power_sum(k), 2.5);
  ASSERT_EQ(g.J, s.J);
  std::vector<double> outcomes;
  std::uint64_t count = 0;
  g.for_each_level([&](double w, std::uint64_t c) {
    for (std::uint64_t i = 0; i < c; ++i) outcomes.push_back(w);
    count += c;
  });
  ASSERT_EQ(count, k);
  for (std::size_t j = 0; j < k; ++j) {
    const double w = std::pow(s.y[j], kCanada.balpha());
    EXPECT_LE(rel_diff(outcomes[j], w), 1e-11) << j;
    EXPECT_LE(rel_diff(g.outcome(j + 1), w), 1e-11) << j;
  }
  EXPECT_EQ(g.top_outcome(), g.outcome(k));
  EXPECT_THROW((void)g.outcome(0), DomainError);
  EXPECT_THROW((void)g.outcome(k + 1), DomainError);
}

TEST(DesignTest, FrozenCanadaSixTickets) {
  const DesignResult d = design_optimal(kCanada, 6);
  EXPECT_EQ(d.status, DesignStatus::kFinite);
  EXPECT_EQ(d.n_plus, 2u);
  EXPECT_EQ(d.n_minus, 4u);
  EXPECT_LE(rel_diff(d.profit, 0.178876526702), 1e-10);
  EXPECT_LE(rel_diff(d.v_star, 0.111518187911), 1e-10);
  EXPECT_DOUBLE_EQ(d.gain_ratio(), 2.0 / 6.0);
}

TEST(DesignTest, NaiveAgreesWithStreaming) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const CptParams p = testing::random_params_alpha_lt_beta(rng);
    const std::uint64_t n = 2 + rng() % 150;
    const DesignResult a = design_optimal(p, n);
    const DesignResult b = design_optimal_naive(p, n);
    ASSERT_EQ(a.status, b.status) << trial;
    EXPECT_EQ(a.n_plus, b.n_plus) << trial;
    EXPECT_LE(rel_diff(a.profit, b.profit), 1e-9) << trial;
    EXPECT_LE(rel_diff(a.ticket_price, b.ticket_price), 1e-9) << trial;
  }
}

TEST(DesignTest, ProfitIsNonnegativeAndPricesConsistent) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const CptParams p = testing::random_params_alpha_lt_beta(rng);
    const std::uint64_t n = 2 + rng() % 2000;
    const DesignResult d = design_optimal(p, n);
    EXPECT_GE(d.profit, 0.0);
    if (d.status != DesignStatus::kFinite) continue;
    EXPECT_EQ(d.n_plus + d.n_minus, n);
    EXPECT_GT(d.ticket_price, 0.0);
    // Seller profit equals revenue minus prize outlay.
    double paid = 0.0;
    d.gain.for_each_level(
        [&](double w, std::uint64_t c) { paid += w * static_cast<double>(c); });
    double taken = 0.0;
    for (const auto& l : d.loss_levels) taken -= l.outcome * l.count;
    EXPECT_LE(rel_diff(taken - paid, d.profit), 1e-8) << trial;
  }
}

TEST(DesignTest, ZeroAndUnbounded) {
  const CptParams flat{0.5, 0.5, 10.0, 1.0, 1.0};
  const DesignResult z = design_optimal(flat, 100);
  EXPECT_EQ(z.status, DesignStatus::kZero);
  EXPECT_EQ(z.profit, 0.0);
  EXPECT_EQ(z.n_plus, 100u);
  EXPECT_EQ(z.gain_ratio(), 0.0);
  EXPECT_EQ(z.max_prize(), 0.0);

  const CptParams flat_cheap{0.5, 0.5, 1.0, 1.0, 1.0};
  EXPECT_EQ(design_optimal(flat_cheap, 100).status, DesignStatus::kUnbounded);

  const DesignResult g = design_optimal(kGreece, 1000);
  EXPECT_EQ(g.status, DesignStatus::kUnbounded);
  EXPECT_EQ(g.profit, kInf);
  EXPECT_EQ(g.max_prize(), kInf);

  EXPECT_THROW((void)design_optimal(kCanada, 1), DomainError);
  EXPECT_THROW((void)design_optimal(kCanada, 10, -1.0), DomainError);
  EXPECT_THROW((void)design_optimal(kCanada, 10, kInf), DomainError);
}

TEST(DesignTest, EpsilonLowersProfit) {
  const DesignResult d0 = design_optimal(kCanada, 500);
  double last = d0.profit;
  for (double eps : {1e-3, 1e-2, 1e-1, 1.0}) {
    const DesignResult d = design_optimal(kCanada, 500, eps);
    EXPECT_EQ(d.status, DesignStatus::kFinite);
    EXPECT_EQ(d.epsilon, eps);
    EXPECT_LT(d.profit, last);
    last = d.profit;
  }
  // A large guarantee forces a loss for the seller.
  EXPECT_LT(design_optimal(kCanada, 500, 1e3).profit, 0.0);
}

TEST(MaxBuyerUtilityTest, FloorIsMet) {
  const std::uint64_t n = 300;
  const double p0 = design_optimal(kCanada, n).profit;
  EXPECT_LE(max_buyer_utility(kCanada, n, p0), 1e-9 * p0 + 1e-300);
  for (double frac : {0.9, 0.5, 0.0}) {
    const double floor = frac * p0;
    const double eps = max_buyer_utility(kCanada, n, floor);
    EXPECT_GT(eps, 0.0);
    EXPECT_GE(design_optimal(kCanada, n, eps).profit,
              floor - 1e-9 * std::abs(p0));
    EXPECT_LT(design_optimal(kCanada, n, eps * (1 + 1e-6)).profit, floor);
  }
  EXPECT_THROW((void)max_buyer_utility(kCanada, n, 2 * p0), InfeasibleError);
  EXPECT_THROW((void)max_buyer_utility(kGreece, n, 0.0), DomainError);
}

TEST(DesignStatusTest, Names) {
  EXPECT_EQ(to_string(DesignStatus::kFinite), "finite");
  EXPECT_EQ(to_string(DesignStatus::kZero), "zero");
  EXPECT_EQ(to_string(DesignStatus::kUnbounded), "unbounded");
}

}  // namespace
}  // namespace cptlottery
