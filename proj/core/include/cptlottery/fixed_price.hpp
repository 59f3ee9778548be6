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

// Designs with a fixed ticket price -w_min. Transformed losses are capped at
// ymin = lambda (-w_min)^beta, so a loss vector has at most three levels: ell1
// tickets at the cap, ell2 - ell1 tickets at an intermediate level Y and the
// rest at zero.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cptlottery/cpt.hpp"
#include "cptlottery/design.hpp"

namespace cptlottery {

// -U(w_min) = lambda (-w_min)^beta. Throws DomainError unless w_min < 0.
[[nodiscard]] double y_min(const CptParams& params, double w_min);

struct BoundedLossSolution {
  std::size_t ell1 = 0;
  std::size_t ell2 = 0;
  double Y = 0.0;
  double ymin = 0.0;
  std::vector<double> y;  // nonincreasing
};

// Maximizes sum_i (y_i/lambda)^(1/beta) over ymin >= y_1 >= ... >= y_n >= 0
// with sum_i h_i y_i = v, by enumerating the (ell1, ell2) vertices.
// Throws InfeasibleError unless 0 <= v <= ymin * sum(h).
[[nodiscard]] BoundedLossSolution solve_loss_bounded(const CptParams& params,
                                                     std::span<const double> h,
                                                     double v, double ymin);

// Every split and every cap count ell1 in [0, n_minus), with all n_minus
// losing tickets active. Quadratic in n; the split range is divided across
// `threads` workers.
[[nodiscard]] DesignResult design_fixed_price(const CptParams& params,
                                              std::uint64_t n, double w_min,
                                              unsigned threads = 1);

// Linear sweep with every losing ticket at the cap. Valid only for
// alpha >= beta, where the cap binds at the optimum; throws PreconditionError
// otherwise.
[[nodiscard]] DesignResult design_fixed_price_fast(const CptParams& params,
                                                   std::uint64_t n,
                                                   double w_min);

}  // namespace cptlottery
