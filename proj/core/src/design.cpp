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

#include "cptlottery/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cptlottery/errors.hpp"
#include "cptlottery/gain_solver.hpp"
#include "cptlottery/loss_solver.hpp"
#include "cptlottery/power_profile.hpp"

namespace cptlottery {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Whether index J qualifies at k winners: J d_t >= W(k) - W(t), t = k - J,
// given the accurate step d_t = W(t/n) - W((t-1)/n). The head mass is first
// taken as w_k - w_t and trusted only when the margin clears its rounding
// error; otherwise it is recomputed as an accurate increment. Rounding noise
// near a tie would otherwise raise J early, and J never comes back down.
bool index_qualifies(double gamma, std::uint64_t n, std::uint64_t J,
                     std::uint64_t k, double w_k, double w_t, double d_t,
                     detail::IncrementMemo& memo) {
  const double lhs = static_cast<double>(J) * d_t;
  const double rhs = w_k - w_t;
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * (w_k + lhs);
  if (lhs - rhs > slack) return true;
  if (rhs - lhs > slack) return false;
  return lhs >= memo.get(gamma, k - J, k, n);
}

}  // namespace

double detail::IncrementMemo::get(double gamma, std::uint64_t lo,
                                  std::uint64_t hi, std::uint64_t n) {
  for (int i = 0; i < 2; ++i) {
    if (a[i] == lo && b[i] == hi) return value[i];
  }
  a[next] = lo;
  b[next] = hi;
  value[next] = weight_increment(gamma, lo, hi, n);
  const double v = value[next];
  next ^= 1;
  return v;
}

std::string_view to_string(DesignStatus status) {
  switch (status) {
    case DesignStatus::kFinite:
      return "finite";
    case DesignStatus::kZero:
      return "zero";
    case DesignStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

MidOptimum mid_optimum(double c_plus, double c_minus, const CptParams& params) {
  const double a = params.alpha;
  const double b = params.beta;
  if (c_minus == 0.0) return {DesignStatus::kZero, 0.0, 0.0};
  if (a < b) {
    // Work in logs: the US instance pushes both coefficients far from 1.
    const double r = a / b;
    const double log_v = (a * b / (b - a)) * std::log(r * c_minus / c_plus);
    const double log_mag = (b / (b - a)) * std::log(c_minus) -
                           (a / (b - a)) * std::log(c_plus) +
                           (a / (b - a)) * std::log(r) + std::log1p(-r);
    return {DesignStatus::kFinite, -std::exp(log_mag), std::exp(log_v)};
  }
  if (a == b && c_plus >= c_minus) return {DesignStatus::kZero, 0.0, 0.0};
  return {DesignStatus::kUnbounded, -kInf, kInf};
}

MidOptimum mid_optimum_eps(double c_plus, double c_minus,
                           const CptParams& params, double eps) {
  if (!(eps >= 0.0)) throw DomainError("mid_optimum_eps: eps must be >= 0");
  if (eps == 0.0) return mid_optimum(c_plus, c_minus, params);
  const double ba = params.balpha();
  const double bb = params.bbeta();
  const double scale = c_plus * std::pow(eps, ba);
  if (c_minus == 0.0) return {DesignStatus::kFinite, scale, 0.0};
  // v = eps * kappa turns the budget problem into a scalar profile with A = 1.
  ScalarProfile prof;
  prof.A = 1.0;
  prof.B = c_minus * std::pow(eps, bb - ba) / c_plus;
  prof.balpha = ba;
  prof.bbeta = bb;
  prof.upper = kInf;
  const ScalarOptimum opt = solve_scalar_profile(prof);
  if (!opt.bounded) return {DesignStatus::kUnbounded, -kInf, kInf};
  return {DesignStatus::kFinite, scale * opt.f, eps * opt.kappa};
}

double full_loss_coeff(const CptParams& params, std::uint64_t n_minus,
                       std::uint64_t n) {
  return loss_coeff_from_mass(params, n_minus,
                              weight_at(params.gamma_minus, n_minus, n));
}

// ---------------------------------------------------------------------------
// GainSweep

GainSweep::GainSweep(const CptParams& params, std::uint64_t n)
    : params_(params), n_(n), p_(1.0 / (1.0 - params.alpha)) {
  params_.validate();
  if (n == 0) throw DomainError("GainSweep: n must be positive");
}

double GainSweep::w(std::uint64_t s) const {
  return weight_at(params_.gamma_plus, s, n_);
}

double GainSweep::dpow(double d) const {
  return std::pow(std::max(d, 0.0), p_);
}

double GainSweep::c_plus() const {
  return gain_coeff_from_sums(params_.alpha, J_, head_mass(), tail_power_sum());
}

void GainSweep::advance() {
  if (k_ >= n_) throw StateError("GainSweep: already at k = n");
  const double prev_wk = w_k_;
  ++k_;
  w_k_ = w(k_);
  if (J_ == 0) {  // k = 1: a single winner, t = 0
    J_ = 1;
    w_t_ = 0.0;
    return;
  }
  // k moved up with J fixed, so the cursor t = k - J moves up by one.
  const std::uint64_t t = k_ - J_;
  const double g = params_.gamma_plus;
  w_tm1_ = w_t_;
  w_t_ = (J_ == 1) ? prev_wk : w(t);
  d_t_ = memo_.get(g, t - 1, t, n_);
  tail_ += dpow(d_t_);
  ++moves_;
  // Raise J until J d_{k-J} >= W(k) - W(k-J), i.e. until index J qualifies.
  while (J_ < k_) {
    const std::uint64_t tc = k_ - J_;
    if (index_qualifies(g, n_, J_, k_, w_k_, w_t_, d_t_, memo_)) break;
    tail_ -= dpow(d_t_);
    ++J_;
    w_t_ = w_tm1_;
    w_tm1_ = tc >= 2 ? w(tc - 2) : 0.0;
    d_t_ = tc >= 2 ? memo_.get(g, tc - 2, tc - 1, n_) : 0.0;
    ++moves_;
  }
}

bool GainSweep::index_is_minimal() const {
  if (J_ <= 1) return true;
  const std::uint64_t t1 = k_ - J_ + 1;
  const double w_t1 = t1 == k_ ? w_k_ : w(t1);
  const double d_t1 = memo_.get(params_.gamma_plus, t1 - 1, t1, n_);
  return !index_qualifies(params_.gamma_plus, n_, J_ - 1, k_, w_k_, w_t1, d_t1,
                          memo_);
}

// ---------------------------------------------------------------------------
// GainTable

GainTable precompute_gain_table(const CptParams& params, std::uint64_t n) {
  params.validate();
  if (n == 0) throw DomainError("precompute_gain_table: n must be positive");
  GainTable t;
  t.n = n;
  t.weights.resize(n + 1);
  t.steps.resize(n + 1);
  t.prefix.resize(n + 1);
  t.J_of.assign(n + 1, 0);
  t.c_plus_of.assign(n + 1, 0.0);

  const double p = 1.0 / (1.0 - params.alpha);
  CompensatedSum running;
  t.weights[0] = 0.0;
  t.steps[0] = 0.0;
  t.prefix[0] = 0.0;
  for (std::uint64_t s = 1; s <= n; ++s) {
    t.weights[s] = weight_at(params.gamma_plus, s, n);
    t.steps[s] = weight_increment(params.gamma_plus, s - 1, s, n);
    running += std::pow(std::max(t.steps[s], 0.0), p);
    t.prefix[s] = running.value();
  }

  const auto& W = t.weights;
  detail::IncrementMemo memo;
  std::uint64_t J = 1;
  for (std::uint64_t k = 1; k <= n; ++k) {
    while (J < k && !index_qualifies(params.gamma_plus, n, J, k, W[k],
                                     W[k - J], t.steps[k - J], memo)) {
      ++J;
    }
    t.J_of[k] = J;
    t.c_plus_of[k] =
        gain_coeff_from_sums(params.alpha, J, W[k] - W[k - J], t.prefix[k - J]);
  }
  return t;
}

// ---------------------------------------------------------------------------
// GainProfile

GainProfile GainProfile::make(const CptParams& params, std::uint64_t n,
                              std::uint64_t n_plus, std::uint64_t J,
                              double head_mass, double tail_power_sum,
                              double v) {
  GainProfile g;
  g.params = params;
  g.n = n;
  g.n_plus = n_plus;
  g.J = J;
  g.head_mass = head_mass;
  if (n_plus > 0 && v > 0.0) {
    g.level = gain_base_level(params.alpha, v, J, head_mass, tail_power_sum);
    g.base = std::pow(g.level, params.balpha());
  }
  return g;
}

double GainProfile::outcome(std::uint64_t j) const {
  if (j < 1 || j > n_plus) throw DomainError("GainProfile: index out of range");
  if (j <= J || base == 0.0) return base;
  const std::uint64_t s = n_plus - j + 1;
  const double h =
      weight_at(params.gamma_plus, s, n) - weight_at(params.gamma_plus, s - 1, n);
  const double p = 1.0 / (1.0 - params.alpha);
  return base * std::pow(static_cast<double>(J) * h / head_mass, p);
}

// ---------------------------------------------------------------------------
// DesignResult

double DesignResult::max_prize() const {
  if (status == DesignStatus::kUnbounded) return kInf;
  double top = n_plus > 0 ? gain.top_outcome() : 0.0;
  for (const auto& l : loss_levels) top = std::max(top, l.outcome);
  return top + ticket_price;
}

double DesignResult::gain_ratio() const {
  if (status == DesignStatus::kZero || n == 0) return 0.0;
  return static_cast<double>(n_plus) / static_cast<double>(n);
}

DesignResult zero_design(const CptParams& params, std::uint64_t n) {
  DesignResult r;
  r.params = params;
  r.n = n;
  r.n_minus = 0;
  r.n_plus = n;
  r.status = DesignStatus::kZero;
  r.gain = GainProfile::make(params, n, n, n, 1.0, 0.0, 0.0);
  return r;
}

namespace {

struct SplitRecord {
  std::uint64_t k = 0;
  std::uint64_t J = 0;
  std::uint64_t ell = 0;
  double head_mass = 0.0;
  double tail_power_sum = 0.0;
  double loss_mass = 0.0;
  double c_plus = 0.0;
  double c_minus = 0.0;
  MidOptimum mid;
};

DesignResult assemble(const CptParams& params, std::uint64_t n, double eps,
                      const SplitRecord& s) {
  DesignResult r;
  r.params = params;
  r.n = n;
  r.n_plus = s.k;
  r.n_minus = n - s.k;
  r.epsilon = eps;
  r.c_plus = s.c_plus;
  r.c_minus = s.c_minus;
  r.status = s.mid.status;
  r.F = s.mid.F;
  r.profit = -s.mid.F;
  r.v_star = s.mid.v_star;
  if (s.mid.status == DesignStatus::kUnbounded) {
    r.profit = kInf;
    r.ticket_price = kInf;
    return r;
  }
  r.gain = GainProfile::make(params, n, s.k, s.J, s.head_mass,
                             s.tail_power_sum, r.v_star + eps);
  const double y_loss = r.v_star / s.loss_mass;
  r.ticket_price = std::pow(y_loss / params.lambda, params.bbeta());
  r.loss_levels.push_back({-r.ticket_price, s.ell});
  if (s.ell < r.n_minus) r.loss_levels.push_back({0.0, r.n_minus - s.ell});
  return r;
}

DesignResult unbounded_design(const CptParams& params, std::uint64_t n,
                              double eps, const SplitRecord& s) {
  return assemble(params, n, eps, s);
}

void check_design_inputs(const CptParams& params, std::uint64_t n, double eps) {
  params.validate();
  if (n < 2) throw DomainError("design: n must be at least 2");
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw DomainError("design: epsilon must be finite and nonnegative");
  }
}

}  // namespace

DesignResult design_optimal(const CptParams& params, std::uint64_t n,
                            double eps) {
  check_design_inputs(params, n, eps);
  GainSweep sweep(params, n);
  SplitRecord best;
  double best_F = eps == 0.0 ? 0.0 : kInf;
  for (std::uint64_t k = 1; k < n; ++k) {
    sweep.advance();
    SplitRecord cur;
    cur.k = k;
    cur.ell = n - k;
    cur.c_plus = sweep.c_plus();
    cur.loss_mass = weight_at(params.gamma_minus, n - k, n);
    cur.c_minus = loss_coeff_from_mass(params, n - k, cur.loss_mass);
    cur.mid = mid_optimum_eps(cur.c_plus, cur.c_minus, params, eps);
    if (cur.mid.status == DesignStatus::kUnbounded) {
      cur.J = sweep.J();
      cur.head_mass = sweep.head_mass();
      cur.tail_power_sum = sweep.tail_power_sum();
      return unbounded_design(params, n, eps, cur);
    }
    if (cur.mid.status == DesignStatus::kFinite && cur.mid.F < best_F) {
      cur.J = sweep.J();
      cur.head_mass = sweep.head_mass();
      cur.tail_power_sum = sweep.tail_power_sum();
      best = cur;
      best_F = cur.mid.F;
    }
  }
  if (best.k == 0) return zero_design(params, n);
  return assemble(params, n, eps, best);
}

DesignResult design_optimal_naive(const CptParams& params, std::uint64_t n) {
  check_design_inputs(params, n, 0.0);
  SplitRecord best;
  double best_F = 0.0;
  const double p = 1.0 / (1.0 - params.alpha);
  for (std::uint64_t k = 1; k < n; ++k) {
    const auto hp = uniform_gain_weights(params.gamma_plus, k, n);
    const auto hm = uniform_loss_weights(params.gamma_minus, n - k, n);
    SplitRecord cur;
    cur.k = k;
    cur.J = transitional_index(hp);
    cur.c_plus = gain_value_coeff(params, hp, cur.J);
    cur.ell = best_ell(params, hm);
    cur.c_minus = loss_value_coeff(params, hm, cur.ell);
    cur.mid = mid_optimum(cur.c_plus, cur.c_minus, params);
    const bool unbounded = cur.mid.status == DesignStatus::kUnbounded;
    if (unbounded || (cur.mid.status == DesignStatus::kFinite &&
                      cur.mid.F < best_F)) {
      CompensatedSum head;
      CompensatedSum tail;
      CompensatedSum loss;
      for (std::uint64_t j = 0; j < cur.J; ++j) head += hp[j];
      for (std::uint64_t j = cur.J; j < k; ++j) tail += std::pow(hp[j], p);
      for (std::uint64_t i = 0; i < cur.ell; ++i) loss += hm[i];
      cur.head_mass = head.value();
      cur.tail_power_sum = tail.value();
      cur.loss_mass = loss.value();
      if (unbounded) return unbounded_design(params, n, 0.0, cur);
      best = cur;
      best_F = cur.mid.F;
    }
  }
  if (best.k == 0) return zero_design(params, n);
  return assemble(params, n, 0.0, best);
}

// ---------------------------------------------------------------------------
// Buyer-utility maximization

double max_buyer_utility(const CptParams& params, std::uint64_t n,
                         double profit_floor) {
  check_design_inputs(params, n, 0.0);
  if (!std::isfinite(profit_floor)) {
    throw DomainError("max_buyer_utility: profit floor must be finite");
  }
  const GainTable table = precompute_gain_table(params, n);
  std::vector<double> c_minus(n);
  for (std::uint64_t k = 1; k < n; ++k) {
    c_minus[k] = full_loss_coeff(params, n - k, n);
  }
  // Best-split profit, without the sell-nothing fallback.
  auto profit_at = [&](double eps) {
    double best = -kInf;
    for (std::uint64_t k = 1; k < n; ++k) {
      const MidOptimum m =
          mid_optimum_eps(table.c_plus_of[k], c_minus[k], params, eps);
      if (m.status == DesignStatus::kUnbounded) return kInf;
      best = std::max(best, -m.F);
    }
    return best;
  };

  const double p0 = profit_at(0.0);
  if (p0 == kInf) {
    throw DomainError(
        "max_buyer_utility: profit is unbounded, so is the buyer's utility");
  }
  if (profit_floor > p0) {
    throw InfeasibleError("max_buyer_utility: floor exceeds the optimal profit");
  }

  // Bracket: profit(eps) decreases without bound as eps grows.
  const DesignResult d0 = design_optimal(params, n);
  double hi = d0.v_star > 0.0 ? d0.v_star : 1.0;
  const double scale0 = hi;
  double lo = 0.0;
  double p_lo = p0;
  for (int it = 0; it < 2100; ++it) {
    const double ph = profit_at(hi);
    if (ph < profit_floor) break;
    if (ph > p_lo + 1e-12 * std::abs(p_lo)) {
      throw StateError("max_buyer_utility: profit is not monotone in eps");
    }
    lo = hi;
    p_lo = ph;
    hi *= 2.0;
  }
  while (hi - lo > 1e-9 * hi && hi - lo > 1e-15 * scale0) {
    const double mid = 0.5 * (lo + hi);
    const double pm = profit_at(mid);
    if (pm > p_lo + 1e-12 * std::abs(p_lo)) {
      throw StateError("max_buyer_utility: profit is not monotone in eps");
    }
    if (pm >= profit_floor) {
      lo = mid;
      p_lo = pm;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace cptlottery
