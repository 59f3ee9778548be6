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

// One-dimensional profile f(k) = (A + k)^balpha - B k^bbeta on [0, upper].
//
// With balpha = 1/alpha and bbeta = 1/beta, the sign of f'(k) is the sign of
//   phi(k) - log(bbeta B / balpha),
//   phi(k) = (balpha - 1) log(A + k) - (bbeta - 1) log(k).
// For alpha < beta, phi falls and then rises, with its minimum at
// k0 = (bbeta - 1) A / (balpha - bbeta), so f has at most one interior local
// minimum, to the right of k0. For alpha >= beta, phi is nonincreasing, so any
// interior stationary point of f is a local maximum and the minimum sits on
// the boundary.

#include <limits>
#include <vector>

namespace cptlottery {

struct ScalarProfile {
  double A = 0.0;
  double B = 0.0;
  double balpha = 1.0;
  double bbeta = 1.0;
  // Right end of the domain; +inf searches all of [0, inf).
  double upper = 1.0;

  // Throws DomainError on negative A, nonpositive upper, or exponents below 1.
  void validate() const;
  [[nodiscard]] double eval(double kappa) const;
  [[nodiscard]] double derivative(double kappa) const;
};

struct ScalarOptimum {
  double kappa = 0.0;
  double f = 0.0;
  // False when f is unbounded below on an infinite domain.
  bool bounded = true;
};

// Every root of f' in (0, upper), ascending.
[[nodiscard]] std::vector<double> stationary_points(const ScalarProfile& p);

// Global minimizer. Ties go to the smaller kappa.
[[nodiscard]] ScalarOptimum solve_scalar_profile(const ScalarProfile& p);

}  // namespace cptlottery
