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

#include "cptlottery/loss_solver.hpp"

#include <cmath>

#include "cptlottery/compensated_sum.hpp"
#include "cptlottery/errors.hpp"

namespace cptlottery {

std::size_t best_ell(const CptParams& params, std::span<const double> h) {
  if (h.empty()) throw DomainError("best_ell: empty weight vector");
  const double bb = params.bbeta();
  CompensatedSum prefix;
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t l = 1; l <= h.size(); ++l) {
    prefix.add(h[l - 1]);
    const double score = static_cast<double>(l) * std::pow(prefix.value(), -bb);
    if (score > best_score) {
      best_score = score;
      best = l;
    }
  }
  return best;
}

LossSolution solve_loss(const CptParams& params, std::span<const double> h,
                        double v) {
  if (!(v >= 0.0)) throw DomainError("solve_loss: v must be nonnegative");
  LossSolution sol;
  sol.ell = best_ell(params, h);
  sol.y.assign(h.size(), 0.0);
  if (v == 0.0) return sol;
  CompensatedSum mass;
  for (std::size_t i = 0; i < sol.ell; ++i) mass.add(h[i]);
  sol.Y = v / mass.value();
  for (std::size_t i = 0; i < sol.ell; ++i) sol.y[i] = sol.Y;
  return sol;
}

double loss_coeff_from_mass(const CptParams& params, std::size_t ell,
                            double mass) {
  return static_cast<double>(ell) *
         std::pow(params.lambda * mass, -params.bbeta());
}

double loss_value_coeff(const CptParams& params, std::span<const double> h,
                        std::size_t ell) {
  if (ell < 1 || ell > h.size()) {
    throw DomainError("loss_value_coeff: ell outside [1, n_minus]");
  }
  CompensatedSum mass;
  for (std::size_t i = 0; i < ell; ++i) mass.add(h[i]);
  return loss_coeff_from_mass(params, ell, mass.value());
}

double loss_objective(const CptParams& params, std::span<const double> y) {
  const double bb = params.bbeta();
  CompensatedSum s;
  for (double yi : y) s.add(std::pow(yi / params.lambda, bb));
  return -s.value();
}

}  // namespace cptlottery
