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

#include "cptlottery/fixed_price.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "cptlottery/compensated_sum.hpp"
#include "cptlottery/errors.hpp"
#include "cptlottery/loss_solver.hpp"
#include "cptlottery/power_profile.hpp"

namespace cptlottery {

double y_min(const CptParams& params, double w_min) {
  if (!(w_min < 0.0)) throw DomainError("y_min: w_min must be negative");
  return params.lambda * std::pow(-w_min, params.beta);
}

BoundedLossSolution solve_loss_bounded(const CptParams& params,
                                       std::span<const double> h, double v,
                                       double ymin) {
  if (h.empty()) throw DomainError("solve_loss_bounded: empty weight vector");
  if (!(ymin > 0.0)) throw DomainError("solve_loss_bounded: ymin must be > 0");
  const std::size_t m = h.size();
  std::vector<double> P(m + 1, 0.0);
  CompensatedSum acc;
  for (std::size_t i = 0; i < m; ++i) {
    acc += h[i];
    P[i + 1] = acc.value();
  }
  if (!(v >= 0.0) || v > ymin * P[m]) {
    throw InfeasibleError("solve_loss_bounded: v outside [0, ymin * sum(h)]");
  }

  const double bb = params.bbeta();
  const double cap_term = std::pow(ymin / params.lambda, bb);
  BoundedLossSolution best;
  best.ymin = ymin;
  double best_obj = -1.0;
  auto consider = [&](std::size_t l1, std::size_t l2, double Y) {
    const double obj = static_cast<double>(l1) * cap_term +
                       static_cast<double>(l2 - l1) *
                           std::pow(Y / params.lambda, bb);
    if (obj > best_obj) {
      best_obj = obj;
      best.ell1 = l1;
      best.ell2 = l2;
      best.Y = Y;
    }
  };
  for (std::size_t l1 = 0; l1 <= m; ++l1) {
    const double lo = ymin * P[l1];
    if (lo > v) break;
    if (lo == v) consider(l1, l1, 0.0);
    for (std::size_t l2 = l1 + 1; l2 <= m; ++l2) {
      if (v > ymin * P[l2]) continue;
      const double Y = std::min(ymin, (v - lo) / (P[l2] - P[l1]));
      consider(l1, l2, Y);
    }
  }
  best.y.assign(m, 0.0);
  for (std::size_t i = 0; i < best.ell1; ++i) best.y[i] = ymin;
  for (std::size_t i = best.ell1; i < best.ell2; ++i) best.y[i] = best.Y;
  return best;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct FixedCandidate {
  double g = 0.0;
  std::uint64_t k = 0;  // winners; 0 means none found
  std::uint64_t ell1 = 0;
  double kappa = 0.0;
};

void check_inputs(const CptParams& params, std::uint64_t n, double w_min) {
  params.validate();
  if (n < 2) throw DomainError("fixed-price design: n must be at least 2");
  if (!(w_min < 0.0) || !std::isfinite(w_min)) {
    throw DomainError("fixed-price design: w_min must be finite and negative");
  }
}

DesignResult assemble_fixed(const CptParams& params, std::uint64_t n,
                            double w_min, const FixedCandidate& c,
                            std::uint64_t J, double head_mass,
                            double tail_power_sum, double c_plus) {
  DesignResult r;
  r.params = params;
  r.n = n;
  r.n_plus = c.k;
  r.n_minus = n - c.k;
  r.ticket_price = -w_min;
  r.status = DesignStatus::kFinite;
  r.F = c.g;
  r.profit = -c.g;
  r.c_plus = c_plus;
  r.c_minus = full_loss_coeff(params, r.n_minus, n);

  const double ymin = y_min(params, w_min);
  const double h1 = weight_at(params.gamma_minus, c.ell1, n);
  const double hall = weight_at(params.gamma_minus, r.n_minus, n);
  if (c.kappa >= 1.0) {
    r.v_star = ymin * hall;
    r.loss_levels.push_back({w_min, r.n_minus});
  } else {
    r.v_star = ymin * (h1 + c.kappa * (hall - h1));
    if (c.ell1 > 0) r.loss_levels.push_back({w_min, c.ell1});
    const double mid =
        -std::pow(c.kappa * ymin / params.lambda, params.bbeta());
    r.loss_levels.push_back({mid, r.n_minus - c.ell1});
  }
  r.gain = GainProfile::make(params, n, c.k, J, head_mass, tail_power_sum,
                             r.v_star);
  return r;
}

// Best candidate over winners k in [k_begin, k_end), scanned in ascending
// (k, ell1) order with strict improvement.
FixedCandidate scan_range(const CptParams& params, std::uint64_t n, double ymin,
                          const GainTable& table,
                          const std::vector<double>& loss_weights,
                          std::uint64_t k_begin, std::uint64_t k_end) {
  const double ba = params.balpha();
  const double bb = params.bbeta();
  const double cap_term = std::pow(ymin / params.lambda, bb);
  const double b_const = std::pow(ymin, bb - ba) / std::pow(params.lambda, bb);
  const double ymin_ba = std::pow(ymin, ba);
  FixedCandidate best{kInf, 0, 0, 0.0};
  for (std::uint64_t k = k_begin; k < k_end; ++k) {
    const std::uint64_t nm = n - k;
    const double c_plus = table.c_plus_of[k];
    const double hall = loss_weights[nm];
    for (std::uint64_t l1 = 0; l1 < nm; ++l1) {
      const double h1 = loss_weights[l1];
      const double h2 = hall - h1;
      if (!(h2 > 0.0)) continue;
      ScalarProfile prof;
      prof.A = h1 / h2;
      prof.B = static_cast<double>(nm - l1) * b_const /
               (c_plus * std::pow(h2, ba));
      prof.balpha = ba;
      prof.bbeta = bb;
      prof.upper = 1.0;
      const ScalarOptimum opt = solve_scalar_profile(prof);
      const double g = c_plus * ymin_ba * std::pow(h2, ba) * opt.f -
                       static_cast<double>(l1) * cap_term;
      if (g < best.g) best = {g, k, l1, opt.kappa};
    }
  }
  return best;
}

}  // namespace

DesignResult design_fixed_price(const CptParams& params, std::uint64_t n,
                                double w_min, unsigned threads) {
  check_inputs(params, n, w_min);
  const double ymin = y_min(params, w_min);
  const GainTable table = precompute_gain_table(params, n);
  std::vector<double> loss_weights(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i) {
    loss_weights[i] = weight_at(params.gamma_minus, i, n);
  }

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                         std::min<std::uint64_t>(
                                                             n - 1, 1024))));
  // The inner loop length shrinks with k, so chunks are balanced by work
  // (sum of n - k) rather than by count.
  std::vector<std::uint64_t> bounds{1};
  const double total = 0.5 * static_cast<double>(n - 1) * static_cast<double>(n);
  double acc = 0.0;
  for (std::uint64_t k = 1; k < n && bounds.size() < threads; ++k) {
    acc += static_cast<double>(n - k);
    if (acc >= total * static_cast<double>(bounds.size()) / threads) {
      bounds.push_back(k + 1);
    }
  }
  bounds.push_back(n);

  std::vector<FixedCandidate> partial(bounds.size() - 1);
  if (partial.size() == 1) {
    partial[0] = scan_range(params, n, ymin, table, loss_weights, 1, n);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
      pool.emplace_back([&, i] {
        partial[i] = scan_range(params, n, ymin, table, loss_weights,
                                bounds[i], bounds[i + 1]);
      });
    }
    for (auto& t : pool) t.join();
  }

  FixedCandidate best{0.0, 0, 0, 0.0};  // the sell-nothing design
  for (const auto& c : partial) {
    if (c.k != 0 && c.g < best.g) best = c;
  }
  if (best.k == 0) {
    DesignResult z = zero_design(params, n);
    z.ticket_price = -w_min;
    return z;
  }
  return assemble_fixed(params, n, w_min, best, table.J_of[best.k],
                        table.head_mass(best.k), table.tail_power_sum(best.k),
                        table.c_plus_of[best.k]);
}

DesignResult design_fixed_price_fast(const CptParams& params, std::uint64_t n,
                                     double w_min) {
  check_inputs(params, n, w_min);
  if (params.alpha < params.beta) {
    throw PreconditionError(
        "design_fixed_price_fast requires alpha >= beta; use "
        "design_fixed_price");
  }
  const double ymin = y_min(params, w_min);
  const double ba = params.balpha();
  const double cap_term = std::pow(ymin / params.lambda, params.bbeta());
  GainSweep sweep(params, n);
  FixedCandidate best{0.0, 0, 0, 1.0};
  std::uint64_t best_J = 0;
  double best_head = 0.0;
  double best_tail = 0.0;
  double best_cplus = 0.0;
  for (std::uint64_t k = 1; k < n; ++k) {
    sweep.advance();
    const std::uint64_t nm = n - k;
    const double c_plus = sweep.c_plus();
    const double v = weight_at(params.gamma_minus, nm, n) * ymin;
    const double F =
        c_plus * std::pow(v, ba) - static_cast<double>(nm) * cap_term;
    if (F < best.g) {
      best = {F, k, nm, 1.0};
      best_J = sweep.J();
      best_head = sweep.head_mass();
      best_tail = sweep.tail_power_sum();
      best_cplus = c_plus;
    }
  }
  if (best.k == 0) {
    DesignResult z = zero_design(params, n);
    z.ticket_price = -w_min;
    return z;
  }
  return assemble_fixed(params, n, w_min, best, best_J, best_head, best_tail,
                        best_cplus);
}

}  // namespace cptlottery
