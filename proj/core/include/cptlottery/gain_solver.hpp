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

// Gain-side low-level problem: minimize sum_j y_j^(1/alpha) over
// 0 <= y_1 <= ... <= y_n subject to sum_j h_j y_j = v.
//
// The optimum pools a leading block of J equal levels (J is the transitional
// index of h) and lets every later level grow as (J h_j / H_J)^(alpha/(1-alpha))
// times the block level, where H_J is the block's weight mass.

#include <cstddef>
#include <span>
#include <vector>

#include "cptlottery/cpt.hpp"

namespace cptlottery {

struct GainSolution {
  std::size_t J = 0;      // transitional index, 1-based
  double Y = 0.0;         // level shared by y_1 .. y_J
  std::vector<double> y;  // transformed gains, nondecreasing
};

// min{ j : j * h_{j+1} >= h_1 + ... + h_j }, with h_{n+1} = +inf. 1-based.
[[nodiscard]] std::size_t transitional_index(std::span<const double> h);

// Valley position of a weight sequence that strictly decreases to it and then
// strictly increases. Throws StructureError for any other shape. 1-based.
[[nodiscard]] std::size_t flexional_index(std::span<const double> h);

// Closed-form kernels shared by the explicit and the streaming solvers.
// head_mass = h_1 + ... + h_J, tail_power_sum = sum_{j>J} h_j^(1/(1-alpha)).
[[nodiscard]] double gain_coeff_from_sums(double alpha, std::size_t J,
                                          double head_mass,
                                          double tail_power_sum);
[[nodiscard]] double gain_base_level(double alpha, double v, std::size_t J,
                                     double head_mass, double tail_power_sum);

[[nodiscard]] GainSolution solve_gain(const CptParams& params,
                                      std::span<const double> h, double v);

// c such that the optimal gain objective equals c * v^(1/alpha).
[[nodiscard]] double gain_value_coeff(const CptParams& params,
                                      std::span<const double> h, std::size_t J);

// sum_j y_j^(1/alpha).
[[nodiscard]] double gain_objective(const CptParams& params,
                                    std::span<const double> y);

// Residuals of the KKT system for a candidate gain solution, built from the
// explicit multipliers
//   mu_j   = balpha * ( sum_{j'>=j} y^(balpha-1) - (S/v) sum_{j'>=j} h ),
//   Lambda = -balpha * S / v,           S = sum_j y_j^balpha.
// Every residual is relative to the natural magnitude of its terms.
struct KktReport {
  std::vector<double> mu;
  double lambda = 0.0;
  double max_stationarity_residual = 0.0;
  double max_complementarity_residual = 0.0;
  double primal_residual = 0.0;  // equality constraint and ordering
  double min_mu = 0.0;           // raw
  double min_mu_relative = 0.0;  // min_mu / (balpha * sum_j y_j^(balpha-1))
  bool feasible = true;

  [[nodiscard]] double max_residual() const;
};

[[nodiscard]] KktReport verify_kkt_gain(const CptParams& params,
                                        std::span<const double> h, double v,
                                        const GainSolution& solution);

}  // namespace cptlottery
