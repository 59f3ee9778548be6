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

// Seller-optimal lottery design for a CPT buyer.
//
// A design sells n equally likely tickets: n_minus of them lose and n_plus
// win. For a split, the gain side costs c+ v^(1/alpha) and the loss side earns
// c- v^(1/beta), where v is the utility budget shared by both sides (the
// buyer's individual-rationality constraint binds). The middle level picks v,
// the top level picks the split.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cptlottery/compensated_sum.hpp"
#include "cptlottery/cpt.hpp"

namespace cptlottery {

enum class DesignStatus {
  kFinite,     // a split beats selling nothing
  kZero,       // no split beats the sell-nothing design
  kUnbounded,  // profit can be made arbitrarily large
};

[[nodiscard]] std::string_view to_string(DesignStatus status);

// Minimum over v >= 0 of c_plus (v + eps)^(1/alpha) - c_minus v^(1/beta).
struct MidOptimum {
  DesignStatus status = DesignStatus::kZero;
  double F = 0.0;
  double v_star = 0.0;
};

[[nodiscard]] MidOptimum mid_optimum(double c_plus, double c_minus,
                                     const CptParams& params);

[[nodiscard]] MidOptimum mid_optimum_eps(double c_plus, double c_minus,
                                         const CptParams& params, double eps);

// Full-split loss coefficient n_minus * (lambda W-(n_minus/n))^(-1/beta).
[[nodiscard]] double full_loss_coeff(const CptParams& params,
                                     std::uint64_t n_minus, std::uint64_t n);

namespace detail {

// Two most recent weight_increment results. Consecutive tie checks share one
// increment, so this halves the cost of the accurate fallback.
struct IncrementMemo {
  std::array<std::uint64_t, 2> a{~std::uint64_t{0}, ~std::uint64_t{0}};
  std::array<std::uint64_t, 2> b{};
  std::array<double, 2> value{};
  int next = 0;

  double get(double gamma, std::uint64_t lo, std::uint64_t hi, std::uint64_t n);
};

}  // namespace detail

// Streaming evaluation of the gain coefficient c+(k) for k = 1, 2, ..., n,
// where k is the number of winning tickets of an n-ticket lottery.
//
// With d_s = W+(s/n) - W+((s-1)/n) and S_t = sum_{s<=t} d_s^(1/(1-alpha)),
// the gain weights of a k-winner lottery are h_j = d_{k-j+1}, so the
// transitional index J(k) only needs the telescoped head mass
// W+(k/n) - W+((k-J)/n) and the tail sum S_{k-J}. J(k) is nondecreasing in k,
// and a cursor at t = k - J moves at most 2n steps overall. Memory is O(1).
class GainSweep {
 public:
  GainSweep(const CptParams& params, std::uint64_t n);

  // Moves to k + 1. Precondition: k() < n().
  void advance();

  // Checks that J - 1 does not already qualify at the current k. Costs one
  // extra weight evaluation and one increment.
  [[nodiscard]] bool index_is_minimal() const;

  [[nodiscard]] std::uint64_t n() const { return n_; }
  [[nodiscard]] std::uint64_t k() const { return k_; }
  [[nodiscard]] std::uint64_t J() const { return J_; }
  [[nodiscard]] double head_mass() const { return w_k_ - w_t_; }
  [[nodiscard]] double tail_power_sum() const { return tail_.value(); }
  [[nodiscard]] double c_plus() const;
  [[nodiscard]] std::uint64_t cursor_moves() const { return moves_; }

 private:
  [[nodiscard]] double w(std::uint64_t s) const;
  [[nodiscard]] double dpow(double d) const;

  CptParams params_;
  std::uint64_t n_;
  double p_;  // 1 / (1 - alpha)
  std::uint64_t k_ = 0;
  std::uint64_t J_ = 0;
  double w_k_ = 0.0;    // W+(k/n)
  double w_t_ = 0.0;    // W+(t/n), t = k - J
  double w_tm1_ = 0.0;  // W+((t-1)/n), valid for t >= 1
  double d_t_ = 0.0;    // d_t, as an accurate increment
  CompensatedSum tail_;
  std::uint64_t moves_ = 0;
  mutable detail::IncrementMemo memo_;
};

// Explicit per-k arrays, for moderate n. Index 0 of J_of and c_plus_of is an
// unused placeholder so that entry k belongs to k winners.
struct GainTable {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> J_of;    // size n + 1
  std::vector<double> c_plus_of;      // size n + 1
  std::vector<double> prefix;         // S_0 .. S_n, S_0 = 0
  std::vector<double> weights;        // W+(s/n), s = 0 .. n
  std::vector<double> steps;          // d_s = W+(s/n) - W+((s-1)/n), d_0 = 0

  [[nodiscard]] double head_mass(std::uint64_t k) const {
    return weights[k] - weights[k - J_of[k]];
  }
  [[nodiscard]] double tail_power_sum(std::uint64_t k) const {
    return prefix[k - J_of[k]];
  }
};

[[nodiscard]] GainTable precompute_gain_table(const CptParams& params,
                                              std::uint64_t n);

// Optimal gains of a design in outcome space, generated on demand.
// Winners 1 .. J share the smallest gain; winner j > J receives
//   base * (J h_j / head_mass)^(1/(1-alpha)),  h_j = d_{n_plus - j + 1}.
struct GainProfile {
  CptParams params;
  std::uint64_t n = 0;
  std::uint64_t n_plus = 0;
  std::uint64_t J = 0;
  double head_mass = 0.0;
  double level = 0.0;  // transformed base level Y+
  double base = 0.0;   // outcome of winners 1 .. J, Y+^(1/alpha)

  // Y+ from the gain budget v and the split's closed-form sums.
  static GainProfile make(const CptParams& params, std::uint64_t n,
                          std::uint64_t n_plus, std::uint64_t J,
                          double head_mass, double tail_power_sum, double v);

  [[nodiscard]] double outcome(std::uint64_t j) const;  // 1-based
  [[nodiscard]] double top_outcome() const {
    return n_plus == 0 ? 0.0 : outcome(n_plus);
  }

  // Calls fn(outcome, count) in ascending outcome order: the pooled head
  // first, then every tail winner. One weight evaluation per tail winner.
  template <class Fn>
  void for_each_level(Fn&& fn) const {
    if (n_plus == 0) return;
    fn(base, J);
    if (J == n_plus) return;
    const double p = 1.0 / (1.0 - params.alpha);
    const double scale = static_cast<double>(J) / head_mass;
    double w_hi = weight_at(params.gamma_plus, n_plus - J, n);
    for (std::uint64_t s = n_plus - J; s >= 1; --s) {
      const double w_lo = weight_at(params.gamma_plus, s - 1, n);
      fn(base * std::pow(scale * (w_hi - w_lo), p), std::uint64_t{1});
      w_hi = w_lo;
    }
  }
};

struct LossLevel {
  double outcome = 0.0;  // <= 0
  std::uint64_t count = 0;
};

struct DesignResult {
  CptParams params;
  std::uint64_t n = 0;
  std::uint64_t n_minus = 0;
  std::uint64_t n_plus = 0;
  double v_star = 0.0;
  double epsilon = 0.0;  // utility guaranteed to the buyer
  double ticket_price = 0.0;
  double F = 0.0;
  double profit = 0.0;
  double c_plus = 0.0;
  double c_minus = 0.0;
  DesignStatus status = DesignStatus::kZero;
  GainProfile gain;
  std::vector<LossLevel> loss_levels;  // ascending outcome

  [[nodiscard]] double max_prize() const;
  [[nodiscard]] double gain_ratio() const;
};

// Sell-nothing design: every ticket is free and pays nothing.
[[nodiscard]] DesignResult zero_design(const CptParams& params,
                                       std::uint64_t n);

// Optimal uniform-price design. With eps > 0 the buyer is guaranteed expected
// utility eps and the sell-nothing fallback is no longer available.
[[nodiscard]] DesignResult design_optimal(const CptParams& params,
                                          std::uint64_t n, double eps = 0.0);

// Quadratic reference path: explicit weights, literal index scans and the
// generic low-level solvers for every split.
[[nodiscard]] DesignResult design_optimal_naive(const CptParams& params,
                                                std::uint64_t n);

// Largest eps whose optimal profit still reaches profit_floor.
[[nodiscard]] double max_buyer_utility(const CptParams& params,
                                       std::uint64_t n, double profit_floor);

}  // namespace cptlottery
