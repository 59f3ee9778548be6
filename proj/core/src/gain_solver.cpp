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

#include "cptlottery/gain_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cptlottery/compensated_sum.hpp"
#include "cptlottery/errors.hpp"

namespace cptlottery {

std::size_t transitional_index(std::span<const double> h) {
  if (h.empty()) throw DomainError("transitional_index: empty weight vector");
  CompensatedSum prefix;
  for (std::size_t j = 1; j < h.size(); ++j) {
    prefix.add(h[j - 1]);
    if (static_cast<double>(j) * h[j] >= prefix.value()) return j;
  }
  return h.size();
}

std::size_t flexional_index(std::span<const double> h) {
  if (h.empty()) throw DomainError("flexional_index: empty weight vector");
  const std::size_t n = h.size();
  // Strictly decreasing run when reading from h_n backwards.
  std::size_t m = n;
  while (m > 1 && h[m - 2] < h[m - 1]) --m;
  // h_1 > h_2 > ... > h_m must hold strictly.
  for (std::size_t j = m; j >= 2; --j) {
    if (!(h[j - 1] < h[j - 2])) {
      throw StructureError("flexional_index: weights are not valley-shaped");
    }
  }
  return m;
}

double gain_coeff_from_sums(double alpha, std::size_t J, double head_mass,
                            double tail_power_sum) {
  const double p = 1.0 / (1.0 - alpha);
  const double jd = static_cast<double>(J);
  const double denom =
      std::pow(head_mass, p) + std::pow(jd, alpha * p) * tail_power_sum;
  return jd / std::pow(denom, (1.0 - alpha) / alpha);
}

double gain_base_level(double alpha, double v, std::size_t J, double head_mass,
                       double tail_power_sum) {
  const double p = 1.0 / (1.0 - alpha);
  const double jd = static_cast<double>(J);
  const double denom =
      std::pow(head_mass, p) + std::pow(jd, alpha * p) * tail_power_sum;
  return v * std::pow(head_mass, alpha * p) / denom;
}

namespace {

struct HeadTail {
  double head = 0.0;
  double tail_power = 0.0;
};

HeadTail split_sums(double alpha, std::span<const double> h, std::size_t J) {
  const double p = 1.0 / (1.0 - alpha);
  CompensatedSum head;
  CompensatedSum tail;
  for (std::size_t j = 0; j < J; ++j) head.add(h[j]);
  for (std::size_t j = J; j < h.size(); ++j) tail.add(std::pow(h[j], p));
  return {head.value(), tail.value()};
}

}  // namespace

GainSolution solve_gain(const CptParams& params, std::span<const double> h,
                        double v) {
  if (!(v >= 0.0)) throw DomainError("solve_gain: v must be nonnegative");
  GainSolution sol;
  sol.J = transitional_index(h);
  sol.y.assign(h.size(), 0.0);
  if (v == 0.0) return sol;

  const double alpha = params.alpha;
  const auto [head, tail_power] = split_sums(alpha, h, sol.J);
  sol.Y = gain_base_level(alpha, v, sol.J, head, tail_power);

  const double expo = alpha / (1.0 - alpha);
  const double scale = static_cast<double>(sol.J) / head;
  for (std::size_t j = 0; j < h.size(); ++j) {
    sol.y[j] = j < sol.J ? sol.Y : std::pow(scale * h[j], expo) * sol.Y;
  }
  return sol;
}

double gain_value_coeff(const CptParams& params, std::span<const double> h,
                        std::size_t J) {
  if (J < 1 || J > h.size()) {
    throw DomainError("gain_value_coeff: J outside [1, n_plus]");
  }
  const auto [head, tail_power] = split_sums(params.alpha, h, J);
  return gain_coeff_from_sums(params.alpha, J, head, tail_power);
}

double gain_objective(const CptParams& params, std::span<const double> y) {
  CompensatedSum s;
  const double ba = params.balpha();
  for (double yj : y) s.add(std::pow(yj, ba));
  return s.value();
}

double KktReport::max_residual() const {
  return std::max({max_stationarity_residual, max_complementarity_residual,
                   primal_residual, std::max(0.0, -min_mu_relative)});
}

KktReport verify_kkt_gain(const CptParams& params, std::span<const double> h,
                          double v, const GainSolution& solution) {
  if (!(v > 0.0)) throw DomainError("verify_kkt_gain: v must be positive");
  const std::span<const double> y = solution.y;
  const std::size_t n = h.size();
  if (y.size() != n) throw DomainError("verify_kkt_gain: size mismatch");

  const double ba = params.balpha();
  KktReport rep;

  // Primal feasibility.
  CompensatedSum hy;
  double ymax = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    hy.add(h[j] * y[j]);
    ymax = std::max(ymax, std::abs(y[j]));
  }
  double order_violation = std::max(0.0, -y[0]);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    order_violation = std::max(order_violation, y[j] - y[j + 1]);
  }
  const double eq_residual = std::abs(hy.value() - v) / v;
  rep.primal_residual =
      std::max(eq_residual, ymax > 0.0 ? order_violation / ymax : order_violation);
  rep.feasible = rep.primal_residual <= 1e-10;

  // Multipliers.
  CompensatedSum s_acc;
  for (double yj : y) s_acc.add(std::pow(std::max(yj, 0.0), ba));
  const double S = s_acc.value();
  rep.lambda = -ba * S / v;

  rep.mu.assign(n, 0.0);
  std::vector<double> grad(n);  // balpha * y^(balpha - 1)
  CompensatedSum h_suffix;
  CompensatedSum g_suffix;
  for (std::size_t j = n; j-- > 0;) {
    grad[j] = ba * std::pow(std::max(y[j], 0.0), ba - 1.0);
    h_suffix.add(h[j]);
    g_suffix.add(grad[j]);
    rep.mu[j] = g_suffix.value() - (ba * S / v) * h_suffix.value();
  }
  const double mu_scale = g_suffix.value();

  // Stationarity of the Lagrangian, one row per coordinate.
  double stat = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double next_mu = j + 1 < n ? rep.mu[j + 1] : 0.0;
    const double row = grad[j] + next_mu - rep.mu[j] + rep.lambda * h[j];
    const double mag = std::abs(grad[j]) + std::abs(next_mu) +
                       std::abs(rep.mu[j]) + std::abs(rep.lambda * h[j]);
    if (mag > 0.0) stat = std::max(stat, std::abs(row) / mag);
  }
  rep.max_stationarity_residual = stat;

  // Complementary slackness, relative to balpha * S.
  const double comp_scale = ba * S;
  double comp = std::abs(rep.mu[0] * y[0]);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    comp = std::max(comp, std::abs(rep.mu[j + 1] * (y[j] - y[j + 1])));
  }
  rep.max_complementarity_residual = comp_scale > 0.0 ? comp / comp_scale : comp;

  rep.min_mu = *std::min_element(rep.mu.begin(), rep.mu.end());
  rep.min_mu_relative = mu_scale > 0.0 ? rep.min_mu / mu_scale : rep.min_mu;
  return rep;
}

}  // namespace cptlottery
