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

// Cumulative prospect theory primitives: the power value function, the
// Tversky-Kahneman probability weighting family, rank-dependent decision
// weights and the resulting expected utility of a prospect.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cptlottery/compensated_sum.hpp"

namespace cptlottery {

// Behavioral constants of a CPT buyer.
//
//   alpha        curvature of the value function on gains, in (0, 1)
//   beta         curvature of the value function on losses, in (0, 1)
//   lambda       loss-aversion multiplier, > 0
//   gamma_plus   curvature of the gain weighting function, in (0, 1]
//   gamma_minus  curvature of the loss weighting function, in (0, 1]
struct CptParams {
  double alpha = 0.88;
  double beta = 0.88;
  double lambda = 2.25;
  double gamma_plus = 0.61;
  double gamma_minus = 0.69;

  // Throws DomainError when any field is out of range.
  void validate() const;

  [[nodiscard]] double balpha() const { return 1.0 / alpha; }
  [[nodiscard]] double bbeta() const { return 1.0 / beta; }

  friend bool operator==(const CptParams&, const CptParams&) = default;
};

// U(w) = w^alpha for w >= 0 and -lambda (-w)^beta for w < 0.
[[nodiscard]] double value(const CptParams& params, double w);

// Inverse of value(): u^(1/alpha) for u >= 0, -(-u/lambda)^(1/beta) otherwise.
[[nodiscard]] double value_inverse(const CptParams& params, double u);

// W(p) = p^g / (p^g + (1-p)^g)^(1/g). Exact at both endpoints.
[[nodiscard]] double weight(double gamma, double p);

// W(k/n), with the complement 1 - k/n formed as (n-k)/n so that no digits are
// lost near p = 1.
[[nodiscard]] double weight_at(double gamma, std::uint64_t k, std::uint64_t n);

// W(b/n) - W(a/n) for a <= b <= n, accurate relative to the increment itself
// rather than to W. Subtracting two weight_at values loses about log10(n)
// digits when b - a is small.
[[nodiscard]] double weight_increment(double gamma, std::uint64_t a,
                                      std::uint64_t b, std::uint64_t n);

// A finite prospect with outcomes in nondecreasing order. n_minus counts the
// strictly negative outcomes; a zero outcome is treated as a gain.
struct Prospect {
  std::vector<double> outcomes;
  std::vector<double> probabilities;
  std::size_t n_minus = 0;

  // Sorts nothing; validates order, probabilities and recomputes n_minus.
  static Prospect make(std::vector<double> outcomes,
                       std::vector<double> probabilities);

  // n equally likely outcomes (probability 1/n each), given sorted.
  static Prospect uniform(std::vector<double> outcomes);

  [[nodiscard]] std::size_t size() const { return outcomes.size(); }
  [[nodiscard]] std::size_t n_plus() const { return size() - n_minus; }
};

struct DecisionWeights {
  std::vector<double> h_minus;  // loss side, worst outcome first
  std::vector<double> h_plus;   // gain side, smallest gain first
};

[[nodiscard]] DecisionWeights decision_weights(const CptParams& params,
                                               const Prospect& prospect);

[[nodiscard]] double expected_utility(const CptParams& params,
                                      const Prospect& prospect);

// Decision weights of the n_plus gain tickets of an n-ticket uniform lottery:
// h_j = W+((n_plus - j + 1)/n) - W+((n_plus - j)/n), via weight_increment.
[[nodiscard]] std::vector<double> uniform_gain_weights(double gamma_plus,
                                                       std::uint64_t n_plus,
                                                       std::uint64_t n);

// Decision weights of the n_minus loss tickets of an n-ticket uniform
// lottery: h_i = W-(i/n) - W-((i-1)/n).
[[nodiscard]] std::vector<double> uniform_loss_weights(double gamma_minus,
                                                       std::uint64_t n_minus,
                                                       std::uint64_t n);

// Expected utility of an n-ticket lottery fed level by level in ascending
// outcome order, each level carrying the number of tickets that pay it.
// Cumulative masses are tracked as integer ticket counts, so the decision
// weight of a level deep in either tail is as accurate as W itself.
class UtilityAccumulator {
 public:
  UtilityAccumulator(const CptParams& params, std::uint64_t n);

  // Throws DomainError on a decreasing outcome or when the count overflows n.
  void add(double outcome, std::uint64_t count);

  [[nodiscard]] std::uint64_t tickets_seen() const { return seen_; }
  [[nodiscard]] double value() const { return sum_.value(); }

 private:
  CptParams params_;
  std::uint64_t n_;
  std::uint64_t seen_ = 0;
  double last_outcome_;
  CompensatedSum sum_;
};

}  // namespace cptlottery
