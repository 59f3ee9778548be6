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

#include "cptlottery/power_profile.hpp"

#include <algorithm>
#include <cmath>

#include "cptlottery/errors.hpp"

namespace cptlottery {

void ScalarProfile::validate() const {
  if (!(A >= 0.0) || !std::isfinite(A)) {
    throw DomainError("ScalarProfile: A must be finite and nonnegative");
  }
  if (std::isnan(B)) throw DomainError("ScalarProfile: B is NaN");
  if (!(balpha >= 1.0) || !(bbeta >= 1.0)) {
    throw DomainError("ScalarProfile: exponents must be at least 1");
  }
  if (!(upper > 0.0)) throw DomainError("ScalarProfile: upper must be positive");
}

double ScalarProfile::eval(double kappa) const {
  return std::pow(A + kappa, balpha) - B * std::pow(kappa, bbeta);
}

double ScalarProfile::derivative(double kappa) const {
  return balpha * std::pow(A + kappa, balpha - 1.0) -
         B * bbeta * std::pow(kappa, bbeta - 1.0);
}

namespace {

double phi(const ScalarProfile& p, double kappa) {
  return (p.balpha - 1.0) * std::log(p.A + kappa) -
         (p.bbeta - 1.0) * std::log(kappa);
}

// Root of phi(k) = c on [lo, hi], where phi - c changes sign from
// sign_lo to -sign_lo. Bisection in the geometric mean once the bracket
// spans several orders of magnitude.
double bisect_phi(const ScalarProfile& p, double c, double lo, double hi,
                  bool rising) {
  for (int it = 0; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    double mid = (lo > 0.0 && hi / lo > 4.0) ? std::sqrt(lo * hi)
                                             : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const bool above = phi(p, mid) > c;
    if (above == rising) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Smallest power-of-two upper bound with phi(hi) > c, for an eventually
// rising phi.
double expand_upper(const ScalarProfile& p, double c, double start) {
  double hi = std::max(start, 1.0);
  for (int it = 0; it < 2100 && !(phi(p, hi) > c); ++it) hi *= 2.0;
  return hi;
}

// Root of f' to the right of the minimum of phi, for balpha > bbeta and A > 0.
// Negative when phi stays above c everywhere (f' has no sign change there).
double rising_root(const ScalarProfile& p, double c) {
  const double k0 = (p.bbeta - 1.0) * p.A / (p.balpha - p.bbeta);
  if (k0 > 0.0 && !(phi(p, k0) < c)) return -1.0;
  const double hi = expand_upper(p, c, 2.0 * k0);
  if (!(phi(p, hi) > c)) return -1.0;
  return bisect_phi(p, c, k0, hi, /*rising=*/true);
}

double local_min_root(const ScalarProfile& p) {
  const double c = std::log(p.bbeta * p.B / p.balpha);
  if (p.A == 0.0) {
    return std::pow(p.bbeta * p.B / p.balpha, 1.0 / (p.balpha - p.bbeta));
  }
  return rising_root(p, c);
}

}  // namespace

std::vector<double> stationary_points(const ScalarProfile& p) {
  p.validate();
  std::vector<double> roots;
  if (!(p.B > 0.0)) return roots;
  const double c = std::log(p.bbeta * p.B / p.balpha);
  const double ba = p.balpha;
  const double bb = p.bbeta;
  const bool finite_upper = std::isfinite(p.upper);
  auto keep = [&](double k) {
    if (k > 0.0 && (!finite_upper || k < p.upper)) roots.push_back(k);
  };

  if (p.A == 0.0) {
    // phi(k) = (balpha - bbeta) log k, a single crossing at most.
    if (ba != bb) keep(std::pow(bb * p.B / ba, 1.0 / (ba - bb)));
    return roots;
  }

  if (ba > bb) {
    const double k0 = (bb - 1.0) * p.A / (ba - bb);
    if (!(phi(p, k0) < c)) return roots;
    // Falling branch on (0, k0): phi starts at +inf when bbeta > 1.
    if (bb > 1.0) {
      double lo = k0;
      while (phi(p, lo) < c && lo > 1e-300) lo *= 0.5;
      if (phi(p, lo) > c) keep(bisect_phi(p, c, lo, k0, /*rising=*/false));
    }
    const double r = rising_root(p, c);
    if (r > 0.0) keep(r);
    return roots;
  }

  // Nonincreasing phi: from +inf (bbeta > 1) down to (balpha - bbeta) log k.
  if (bb == 1.0) return roots;  // then balpha <= 1 too: f' has a fixed sign
  double lo = std::min(1.0, finite_upper ? p.upper : 1.0);
  while (phi(p, lo) <= c && lo > 1e-300) lo *= 0.5;
  if (!(phi(p, lo) > c)) return roots;
  double hi = std::max(lo, 1.0);
  for (int it = 0; it < 2100 && phi(p, hi) > c; ++it) hi *= 2.0;
  if (phi(p, hi) > c) return roots;
  keep(bisect_phi(p, c, lo, hi, /*rising=*/false));
  return roots;
}

ScalarOptimum solve_scalar_profile(const ScalarProfile& p) {
  p.validate();
  ScalarOptimum best{0.0, p.eval(0.0), true};
  if (!(p.B > 0.0)) return best;

  const bool finite_upper = std::isfinite(p.upper);
  if (!finite_upper) {
    // f ~ k^balpha - B k^bbeta at infinity.
    if (p.bbeta > p.balpha || (p.bbeta == p.balpha && p.B > 1.0)) {
      return {std::numeric_limits<double>::infinity(),
              -std::numeric_limits<double>::infinity(), false};
    }
  }

  auto consider = [&](double k) {
    const double fk = p.eval(k);
    if (fk < best.f) best = {k, fk, true};
  };
  if (p.balpha > p.bbeta) {
    // Only the rightmost root of f' can be a local minimum.
    const double r = local_min_root(p);
    if (r > 0.0 && (!finite_upper || r < p.upper)) consider(r);
  }
  if (finite_upper) consider(p.upper);
  return best;
}

}  // namespace cptlottery
