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

// Loss-side low-level problem: maximize sum_i (y_i / lambda)^(1/beta) over
// y_1 >= ... >= y_n >= 0 subject to sum_i h_i y_i = v. The objective is convex,
// so the optimum sits on a vertex: ell equal levels followed by zeros.

#include <cstddef>
#include <span>
#include <vector>

#include "cptlottery/cpt.hpp"

namespace cptlottery {

struct LossSolution {
  std::size_t ell = 0;    // number of nonzero levels
  double Y = 0.0;         // common level of y_1 .. y_ell
  std::vector<double> y;  // transformed losses, nonincreasing
};

// argmax_l l * (h_1 + ... + h_l)^(-1/beta); the smallest index wins ties.
[[nodiscard]] std::size_t best_ell(const CptParams& params,
                                   std::span<const double> h);

[[nodiscard]] LossSolution solve_loss(const CptParams& params,
                                      std::span<const double> h, double v);

// l * (lambda * (h_1 + ... + h_l))^(-1/beta). The optimal loss objective is
// -coeff * v^(1/beta).
[[nodiscard]] double loss_value_coeff(const CptParams& params,
                                      std::span<const double> h,
                                      std::size_t ell);

// Same coefficient from the loss mass directly: ell * (lambda * mass)^(-1/beta).
[[nodiscard]] double loss_coeff_from_mass(const CptParams& params,
                                          std::size_t ell, double mass);

// -sum_i (y_i / lambda)^(1/beta).
[[nodiscard]] double loss_objective(const CptParams& params,
                                    std::span<const double> y);

}  // namespace cptlottery
