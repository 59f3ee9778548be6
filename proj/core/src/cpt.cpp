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

#include "cptlottery/cpt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cptlottery/errors.hpp"

namespace cptlottery {

namespace {

bool in_open_unit(double x) { return x > 0.0 && x < 1.0; }

}  // namespace

void CptParams::validate() const {
  if (!in_open_unit(alpha)) {
    throw DomainError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (!in_open_unit(beta)) {
    throw DomainError("beta must lie in (0, 1), got " + std::to_string(beta));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("lambda must be positive, got " + std::to_string(lambda));
  }
  if (!(gamma_plus > 0.0 && gamma_plus <= 1.0)) {
    throw DomainError("gamma_plus must lie in (0, 1], got " +
                      std::to_string(gamma_plus));
  }
  if (!(gamma_minus > 0.0 && gamma_minus <= 1.0)) {
    throw DomainError("gamma_minus must lie in (0, 1], got " +
                      std::to_string(gamma_minus));
  }
}

double value(const CptParams& params, double w) {
  if (!std::isfinite(w)) throw DomainError("value: outcome is not finite");
  if (w >= 0.0) return std::pow(w, params.alpha);
  return -params.lambda * std::pow(-w, params.beta);
}

double value_inverse(const CptParams& params, double u) {
  if (!std::isfinite(u)) throw DomainError("value_inverse: input is not finite");
  if (u >= 0.0) return std::pow(u, params.balpha());
  return -std::pow(-u / params.lambda, params.bbeta());
}

namespace {

double weight_pq(double gamma, double p, double q) {
  const double pg = std::pow(p, gamma);
  const double qg = std::pow(q, gamma);
  return pg / std::pow(pg + qg, 1.0 / gamma);
}

}  // namespace

double weight(double gamma, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("weight: probability outside [0, 1]");
  }
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  if (gamma == 1.0) return p;
  return weight_pq(gamma, p, 1.0 - p);
}

double weight_at(double gamma, std::uint64_t k, std::uint64_t n) {
  if (k == 0) return 0.0;
  if (k >= n) return 1.0;
  const double nd = static_cast<double>(n);
  const double p = static_cast<double>(k) / nd;
  if (gamma == 1.0) return p;
  return weight_pq(gamma, p, static_cast<double>(n - k) / nd);
}

double weight_increment(double gamma, std::uint64_t a, std::uint64_t b,
                        std::uint64_t n) {
  if (a > b || b > n) throw DomainError("weight_increment: need a <= b <= n");
  if (a == b) return 0.0;
  if (a == 0) return weight_at(gamma, b, n);
  const double nd = static_cast<double>(n);
  const double gap = static_cast<double>(b - a);
  if (gamma == 1.0) return gap / nd;
  // ln W(b) - ln W(a) = g ln(b/a) - ln(S_b/S_a) / g with S(x) = x^g + (1-x)^g,
  // and S_b - S_a built from expm1 terms so that nothing cancels.
  const double pg = std::pow(static_cast<double>(a) / nd, gamma);
  const double qg = std::pow(static_cast<double>(n - a) / nd, gamma);
  const double s = pg + qg;
  const double up = std::log1p(gap / static_cast<double>(a));
  const double down =
      b == n ? -std::numeric_limits<double>::infinity()
             : std::log1p(-gap / static_cast<double>(n - a));
  const double ds = pg * std::expm1(gamma * up) + qg * std::expm1(gamma * down);
  const double log_ratio = gamma * up - std::log1p(ds / s) / gamma;
  return pg / std::pow(s, 1.0 / gamma) * std::expm1(log_ratio);
}

Prospect Prospect::make(std::vector<double> outcomes,
                        std::vector<double> probabilities) {
  if (outcomes.empty()) throw DomainError("prospect has no outcomes");
  if (outcomes.size() != probabilities.size()) {
    throw DomainError("prospect outcome/probability length mismatch");
  }
  CompensatedSum total;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!std::isfinite(outcomes[i])) {
      throw DomainError("prospect outcome is not finite");
    }
    if (i > 0 && outcomes[i] < outcomes[i - 1]) {
      throw DomainError("prospect outcomes must be nondecreasing");
    }
    if (!(probabilities[i] >= 0.0 && probabilities[i] <= 1.0)) {
      throw DomainError("prospect probability outside [0, 1]");
    }
    total.add(probabilities[i]);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw DomainError("prospect probabilities do not sum to 1");
  }
  Prospect p;
  p.n_minus = 0;
  while (p.n_minus < outcomes.size() && outcomes[p.n_minus] < 0.0) ++p.n_minus;
  p.outcomes = std::move(outcomes);
  p.probabilities = std::move(probabilities);
  return p;
}

Prospect Prospect::uniform(std::vector<double> outcomes) {
  const std::size_t n = outcomes.size();
  if (n == 0) throw DomainError("prospect has no outcomes");
  std::vector<double> probs(n, 1.0 / static_cast<double>(n));
  // 1/n summed n times can drift past the 1e-12 tolerance only for very
  // large n; those callers should use UtilityAccumulator instead.
  return make(std::move(outcomes), std::move(probs));
}

DecisionWeights decision_weights(const CptParams& params,
                                 const Prospect& prospect) {
  const std::size_t n = prospect.size();
  const std::size_t m = prospect.n_minus;
  DecisionWeights dw;
  dw.h_minus.resize(m);
  dw.h_plus.resize(n - m);

  CompensatedSum cum;
  double w_prev = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cum.add(prospect.probabilities[i]);
    const double w = weight(params.gamma_minus, std::min(1.0, cum.value()));
    dw.h_minus[i] = w - w_prev;
    w_prev = w;
  }

  CompensatedSum tail;
  w_prev = 0.0;
  for (std::size_t j = n; j-- > m;) {
    tail.add(prospect.probabilities[j]);
    const double w = weight(params.gamma_plus, std::min(1.0, tail.value()));
    dw.h_plus[j - m] = w - w_prev;
    w_prev = w;
  }
  return dw;
}

double expected_utility(const CptParams& params, const Prospect& prospect) {
  const DecisionWeights dw = decision_weights(params, prospect);
  CompensatedSum eu;
  for (std::size_t i = 0; i < dw.h_minus.size(); ++i) {
    eu.add(dw.h_minus[i] * value(params, prospect.outcomes[i]));
  }
  for (std::size_t j = 0; j < dw.h_plus.size(); ++j) {
    eu.add(dw.h_plus[j] * value(params, prospect.outcomes[prospect.n_minus + j]));
  }
  return eu.value();
}

std::vector<double> uniform_gain_weights(double gamma_plus, std::uint64_t n_plus,
                                         std::uint64_t n) {
  if (n_plus > n) throw DomainError("n_plus exceeds ticket count");
  std::vector<double> h(n_plus);
  // h_j uses the tail mass (n_plus - j + 1)/n.
  for (std::uint64_t s = 1; s <= n_plus; ++s) {
    h[n_plus - s] = weight_increment(gamma_plus, s - 1, s, n);
  }
  return h;
}

std::vector<double> uniform_loss_weights(double gamma_minus,
                                         std::uint64_t n_minus, std::uint64_t n) {
  if (n_minus > n) throw DomainError("n_minus exceeds ticket count");
  std::vector<double> h(n_minus);
  for (std::uint64_t i = 1; i <= n_minus; ++i) {
    h[i - 1] = weight_increment(gamma_minus, i - 1, i, n);
  }
  return h;
}

UtilityAccumulator::UtilityAccumulator(const CptParams& params, std::uint64_t n)
    : params_(params), n_(n), last_outcome_(-std::numeric_limits<double>::infinity()) {
  if (n == 0) throw DomainError("lottery must have at least one ticket");
}

void UtilityAccumulator::add(double outcome, std::uint64_t count) {
  if (count == 0) return;
  if (outcome < last_outcome_) {
    throw DomainError("outcome levels must be added in ascending order");
  }
  if (count > n_ - seen_) throw DomainError("more tickets than the lottery has");
  const std::uint64_t before = seen_;
  const std::uint64_t after = seen_ + count;
  double pi;
  if (outcome < 0.0) {
    pi = weight_at(params_.gamma_minus, after, n_) -
         weight_at(params_.gamma_minus, before, n_);
  } else {
    pi = weight_at(params_.gamma_plus, n_ - before, n_) -
         weight_at(params_.gamma_plus, n_ - after, n_);
  }
  sum_.add(pi * cptlottery::value(params_, outcome));
  seen_ = after;
  last_outcome_ = outcome;
}

}  // namespace cptlottery
