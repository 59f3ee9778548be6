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

// Brute-force and generic-numeric reference solvers for small instances.
// Nothing here uses the closed forms of the engine: the low-level problems are
// solved by isotonic pooling plus multistart projected gradient (gains) and by
// vertex enumeration plus random sampling (losses); the middle and top levels
// by exhaustive enumeration over a dense grid with golden-section polish.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cptlottery/cpt.hpp"
#include "cptlottery/design.hpp"

namespace cptlottery {

struct OracleConfig {
  std::size_t grid_points = 100000;
  std::size_t polish_iters = 60;
  std::size_t sample_count = 100000;
  std::size_t starts = 50;
  std::uint64_t seed = 0x5eed5eedULL;

  void validate() const;
};

struct OraclePoint {
  std::vector<double> y;
  double objective = 0.0;
  // Gains: Frank-Wolfe duality gap at y, an upper bound on objective - opt.
  double certified_gap = 0.0;
  // Gains: objective of the best multistart run, for agreement checks.
  double multistart_objective = 0.0;
  // Losses: best vertex and best random sample, kept apart.
  double best_vertex_objective = 0.0;
  double best_sample_objective = 0.0;
};

inline constexpr std::size_t kOracleMaxLevels = 12;
inline constexpr std::uint64_t kOracleMaxTickets = 8;

// min sum_j y_j^(1/alpha) s.t. 0 <= y_1 <= ... <= y_n, sum_j h_j y_j = v.
[[nodiscard]] OraclePoint oracle_gain(const CptParams& params,
                                      std::span<const double> h, double v,
                                      const OracleConfig& config = {});

// min -sum_i (y_i/lambda)^(1/beta) s.t. y_1 >= ... >= y_n >= 0,
// sum_i h_i y_i = v.
[[nodiscard]] OraclePoint oracle_loss(const CptParams& params,
                                      std::span<const double> h, double v,
                                      const OracleConfig& config = {});

// Outcome-space design found by the oracle.
struct OracleDesign {
  std::uint64_t n = 0;
  std::uint64_t n_minus = 0;
  std::uint64_t n_plus = 0;
  double v_star = 0.0;
  double F = 0.0;
  double profit = 0.0;
  double ticket_price = 0.0;
  DesignStatus status = DesignStatus::kZero;
  std::uint64_t ell1 = 0;  // fixed price: tickets at the cap
  std::uint64_t ell2 = 0;  // fixed price: nonzero loss tickets
  std::vector<double> outcomes;  // ascending, one per ticket
};

[[nodiscard]] OracleDesign oracle_design(const CptParams& params,
                                         std::uint64_t n,
                                         const OracleConfig& config = {});

[[nodiscard]] OracleDesign oracle_fixed(const CptParams& params,
                                        std::uint64_t n, double w_min,
                                        const OracleConfig& config = {});

}  // namespace cptlottery
