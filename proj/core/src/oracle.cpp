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

#include "cptlottery/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "cptlottery/compensated_sum.hpp"
#include "cptlottery/errors.hpp"

namespace cptlottery {

void OracleConfig::validate() const {
  if (grid_points < 3 || polish_iters < 1 || sample_count < 1 || starts < 1) {
    throw DomainError("OracleConfig: counts must be positive (grid >= 3)");
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double>& x) {
  std::vector<double> s = x;
  std::sort(s.begin(), s.end(), std::greater<>());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    cum += s[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (s[i] - t > 0.0) theta = t;
  }
  for (double& xi : x) xi = std::max(xi - theta, 0.0);
}

std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t m) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> u(m);
  double s = 0.0;
  for (double& ui : u) {
    ui = exp1(rng);
    s += ui;
  }
  for (double& ui : u) ui /= s;
  return u;
}

// Golden-section minimization of a unimodal-near-the-bracket function.
double golden(const std::function<double(double)>& f, double a, double b,
              std::size_t iters) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (std::size_t i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

struct GridMin {
  double x = 0.0;
  double f = kInf;
  std::size_t index = 0;
};

// Dense uniform grid over [a, b] followed by golden-section polish between
// the neighbours of the best grid point.
GridMin grid_polish(const std::function<double(double)>& f, double a, double b,
                    const OracleConfig& cfg) {
  GridMin best;
  const std::size_t m = cfg.grid_points;
  const double step = (b - a) / static_cast<double>(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = i + 1 == m ? b : a + step * static_cast<double>(i);
    const double fx = f(x);
    if (fx < best.f) best = {x, fx, i};
  }
  const double lo = best.index == 0 ? a : best.x - step;
  const double hi = best.index + 1 == m ? b : best.x + step;
  const double xp = golden(f, lo, hi, cfg.polish_iters);
  const double fp = f(xp);
  if (fp < best.f) {
    best.x = xp;
    best.f = fp;
  }
  return best;
}

void check_weights(std::span<const double> h, const char* who) {
  if (h.empty()) throw DomainError(std::string(who) + ": empty weight vector");
  if (h.size() > kOracleMaxLevels) {
    throw SizeError(std::string(who) + ": at most 12 levels");
  }
  for (double x : h) {
    if (!(x > 0.0)) throw DomainError(std::string(who) + ": weights must be > 0");
  }
}

// Gain objective and its simplex parameterization u -> y:
// y_j = sum_{i<=j} u_i v / g_i with g_i = sum_{j>=i} h_j.
struct GainProblem {
  double ba;
  double v;
  std::vector<double> g;

  std::vector<double> to_y(const std::vector<double>& u) const {
    std::vector<double> y(u.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      acc += u[i] * v / g[i];
      y[i] = acc;
    }
    return y;
  }
  std::vector<double> to_u(const std::vector<double>& y) const {
    std::vector<double> u(y.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      u[i] = std::max(y[i] - prev, 0.0) * g[i] / v;
      prev = y[i];
    }
    const double s = std::accumulate(u.begin(), u.end(), 0.0);
    for (double& ui : u) ui /= s;
    return u;
  }
  double objective(const std::vector<double>& u) const {
    double s = 0.0;
    for (double yj : to_y(u)) s += std::pow(yj, ba);
    return s;
  }
  std::vector<double> gradient(const std::vector<double>& u) const {
    const auto y = to_y(u);
    std::vector<double> grad(u.size());
    double suffix = 0.0;
    for (std::size_t i = u.size(); i-- > 0;) {
      suffix += ba * std::pow(y[i], ba - 1.0);
      grad[i] = suffix * v / g[i];
    }
    return grad;
  }
  double fw_gap(const std::vector<double>& u) const {
    const auto grad = gradient(u);
    double dot = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) dot += grad[i] * u[i];
    return std::max(dot - *std::min_element(grad.begin(), grad.end()), 0.0);
  }
};

std::vector<double> projected_gradient(const GainProblem& P,
                                       std::vector<double> u) {
  double f = P.objective(u);
  double step = 1.0;
  for (int it = 0; it < 4000; ++it) {
    const auto grad = P.gradient(u);
    std::vector<double> cand(u.size());
    double f_new = kInf;
    for (int bt = 0; bt < 80; ++bt) {
      for (std::size_t i = 0; i < u.size(); ++i) cand[i] = u[i] - step * grad[i];
      project_simplex(cand);
      double lin = 0.0;
      double sq = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        lin += grad[i] * (cand[i] - u[i]);
        sq += (cand[i] - u[i]) * (cand[i] - u[i]);
      }
      f_new = P.objective(cand);
      if (f_new <= f + lin + sq / (2.0 * step)) break;
      step *= 0.5;
    }
    if (!(f_new < f)) break;
    u = cand;
    f = f_new;
    step *= 2.0;
    if (P.fw_gap(u) <= 1e-14 * f) break;
  }
  return u;
}

// Exact isotonic pooling: adjacent blocks merge while their mean weights
// decrease; a block of mean m takes the level m^(alpha/(1-alpha)), rescaled
// to meet the budget.
std::vector<double> pooled_solution(double alpha, std::span<const double> h,
                                    double v) {
  struct Block {
    double sum;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (double x : h) {
    blocks.push_back({x, 1});
    while (blocks.size() >= 2) {
      const Block& b = blocks.back();
      const Block& a = blocks[blocks.size() - 2];
      if (a.sum / static_cast<double>(a.count) <=
          b.sum / static_cast<double>(b.count)) {
        break;
      }
      const Block merged{a.sum + b.sum, a.count + b.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  const double e = alpha / (1.0 - alpha);
  std::vector<double> y;
  double mass = 0.0;
  for (const Block& b : blocks) {
    const double level = std::pow(b.sum / static_cast<double>(b.count), e);
    y.insert(y.end(), b.count, level);
    mass += b.sum * level;
  }
  for (double& yj : y) yj *= v / mass;
  return y;
}

}  // namespace

OraclePoint oracle_gain(const CptParams& params, std::span<const double> h,
                        double v, const OracleConfig& config) {
  params.validate();
  config.validate();
  check_weights(h, "oracle_gain");
  if (!(v >= 0.0)) throw DomainError("oracle_gain: v must be nonnegative");
  const std::size_t m = h.size();
  OraclePoint out;
  if (v == 0.0) {
    out.y.assign(m, 0.0);
    return out;
  }
  GainProblem P{params.balpha(), v, std::vector<double>(m)};
  double suffix = 0.0;
  for (std::size_t i = m; i-- > 0;) {
    suffix += h[i];
    P.g[i] = suffix;
  }

  std::mt19937_64 rng(config.seed);
  std::vector<double> best_u;
  double best_f = kInf;
  for (std::size_t s = 0; s < config.starts; ++s) {
    auto u = projected_gradient(P, dirichlet(rng, m));
    const double f = P.objective(u);
    if (f < best_f) {
      best_f = f;
      best_u = u;
    }
  }
  out.multistart_objective = best_f;

  const auto pooled = pooled_solution(params.alpha, h, v);
  const auto pooled_u = P.to_u(pooled);
  const double pooled_f = P.objective(pooled_u);
  const auto& u = pooled_f <= best_f ? pooled_u : best_u;
  out.y = P.to_y(u);
  out.objective = P.objective(u);
  out.certified_gap = P.fw_gap(u);
  return out;
}

OraclePoint oracle_loss(const CptParams& params, std::span<const double> h,
                        double v, const OracleConfig& config) {
  params.validate();
  config.validate();
  check_weights(h, "oracle_loss");
  if (!(v >= 0.0)) throw DomainError("oracle_loss: v must be nonnegative");
  const std::size_t m = h.size();
  OraclePoint out;
  out.y.assign(m, 0.0);
  if (v == 0.0) return out;

  // y_i = sum_{i'>=i} z_i', z_i = u_i v / P_i with P_i = h_1 + ... + h_i.
  std::vector<double> P(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    acc += h[i];
    P[i] = acc;
  }
  const double bb = params.bbeta();
  auto evaluate = [&](const std::vector<double>& u, std::vector<double>& y) {
    double level = 0.0;
    for (std::size_t i = m; i-- > 0;) {
      level += u[i] * v / P[i];
      y[i] = level;
    }
    double s = 0.0;
    for (double yi : y) s += std::pow(yi / params.lambda, bb);
    return -s;
  };

  std::vector<double> y(m);
  std::vector<double> best_y;
  out.best_vertex_objective = kInf;
  for (std::size_t l = 0; l < m; ++l) {
    std::vector<double> u(m, 0.0);
    u[l] = 1.0;
    const double f = evaluate(u, y);
    if (f < out.best_vertex_objective) {
      out.best_vertex_objective = f;
      best_y = y;
    }
  }
  std::mt19937_64 rng(config.seed);
  out.best_sample_objective = kInf;
  std::vector<double> best_sample_y;
  for (std::size_t s = 0; s < config.sample_count; ++s) {
    const double f = evaluate(dirichlet(rng, m), y);
    if (f < out.best_sample_objective) {
      out.best_sample_objective = f;
      best_sample_y = y;
    }
  }
  if (out.best_sample_objective < out.best_vertex_objective) {
    out.objective = out.best_sample_objective;
    out.y = best_sample_y;
  } else {
    out.objective = out.best_vertex_objective;
    out.y = best_y;
  }
  return out;
}

namespace {

void check_oracle_n(std::uint64_t n) {
  if (n < 2) throw DomainError("oracle: n must be at least 2");
  if (n > kOracleMaxTickets) throw SizeError("oracle: n must be at most 8");
}

std::vector<double> weights_gain(const CptParams& p, std::uint64_t k,
                                 std::uint64_t n) {
  std::vector<double> h(k);
  for (std::uint64_t j = 1; j <= k; ++j) {
    h[j - 1] = weight(p.gamma_plus, static_cast<double>(k - j + 1) / n) -
               weight(p.gamma_plus, static_cast<double>(k - j) / n);
  }
  return h;
}

std::vector<double> weights_loss(const CptParams& p, std::uint64_t m,
                                 std::uint64_t n) {
  std::vector<double> h(m);
  for (std::uint64_t i = 1; i <= m; ++i) {
    h[i - 1] = weight(p.gamma_minus, static_cast<double>(i) / n) -
               weight(p.gamma_minus, static_cast<double>(i - 1) / n);
  }
  return h;
}

}  // namespace

OracleDesign oracle_design(const CptParams& params, std::uint64_t n,
                           const OracleConfig& config) {
  params.validate();
  config.validate();
  check_oracle_n(n);
  const double ba = params.balpha();
  const double bb = params.bbeta();

  OracleDesign best;
  best.n = n;
  best.n_plus = n;
  best.outcomes.assign(n, 0.0);
  OraclePoint best_gain;
  OraclePoint best_loss;
  for (std::uint64_t k = 1; k < n; ++k) {
    const auto hp = weights_gain(params, k, n);
    const auto hm = weights_loss(params, n - k, n);
    const OraclePoint gain = oracle_gain(params, hp, 1.0, config);
    const OraclePoint loss = oracle_loss(params, hm, 1.0, config);
    const double cp = gain.objective;
    const double cm = -loss.objective;
    // F(v) = cp v^balpha - cm v^bbeta in t = log v.
    auto F = [&](double t) {
      return cp * std::exp(ba * t) - cm * std::exp(bb * t);
    };
    const double T = (700.0 - std::max(std::abs(std::log(cp)),
                                       std::abs(std::log(cm)))) /
                     std::max(ba, bb);
    const GridMin gm = grid_polish(F, -T, T, config);
    const double step = 2.0 * T / static_cast<double>(config.grid_points - 1);
    if (gm.index + 1 == config.grid_points && F(T) < F(T - step) &&
        gm.f < 0.0) {
      best = OracleDesign{};
      best.n = n;
      best.n_minus = n - k;
      best.n_plus = k;
      best.status = DesignStatus::kUnbounded;
      best.F = -kInf;
      best.profit = kInf;
      return best;
    }
    if (gm.f < best.F) {
      best.n_minus = n - k;
      best.n_plus = k;
      best.F = gm.f;
      best.profit = -gm.f;
      best.v_star = std::exp(gm.x);
      best.status = DesignStatus::kFinite;
      best_gain = gain;
      best_loss = loss;
    }
  }
  if (best.status == DesignStatus::kFinite) {
    best.outcomes.clear();
    for (double y : best_loss.y) {
      best.outcomes.push_back(
          -std::pow(y * best.v_star / params.lambda, bb));
    }
    for (double y : best_gain.y) {
      best.outcomes.push_back(std::pow(y * best.v_star, ba));
    }
    best.ticket_price = -best.outcomes.front();
    best.ell1 = 0;
    best.ell2 = best.n_minus;
  }
  return best;
}

OracleDesign oracle_fixed(const CptParams& params, std::uint64_t n,
                          double w_min, const OracleConfig& config) {
  params.validate();
  config.validate();
  check_oracle_n(n);
  if (!(w_min < 0.0)) throw DomainError("oracle_fixed: w_min must be negative");
  const double ba = params.balpha();
  const double bb = params.bbeta();
  const double price = -w_min;
  const double ymin = params.lambda * std::pow(price, params.beta);
  const double cap = std::pow(ymin / params.lambda, bb);

  OracleDesign best;
  best.n = n;
  best.n_plus = n;
  best.ticket_price = price;
  best.outcomes.assign(n, 0.0);
  OraclePoint best_gain;
  double best_kappa = 0.0;
  for (std::uint64_t k = 1; k < n; ++k) {
    const std::uint64_t nm = n - k;
    const auto hp = weights_gain(params, k, n);
    const auto hm = weights_loss(params, nm, n);
    const OraclePoint gain = oracle_gain(params, hp, 1.0, config);
    const double cp = gain.objective;
    std::vector<double> P(nm + 1, 0.0);
    for (std::uint64_t i = 0; i < nm; ++i) P[i + 1] = P[i] + hm[i];
    for (std::uint64_t l1 = 0; l1 < nm; ++l1) {
      for (std::uint64_t l2 = l1 + 1; l2 <= nm; ++l2) {
        auto g = [&](double kappa) {
          const double v = ymin * (P[l1] + kappa * (P[l2] - P[l1]));
          return cp * std::pow(v, ba) - static_cast<double>(l1) * cap -
                 static_cast<double>(l2 - l1) *
                     std::pow(kappa * ymin / params.lambda, bb);
        };
        // A uniform grid misses optima at tiny kappa, so scan log kappa too.
        GridMin gm = grid_polish(g, 0.0, 1.0, config);
        GridMin gl = grid_polish([&](double t) { return g(std::exp(t)); },
                                 -700.0, 0.0, config);
        if (gl.f < gm.f) gm = {std::exp(gl.x), gl.f, gl.index};
        if (gm.f < best.F) {
          best.n_minus = nm;
          best.n_plus = k;
          best.ell1 = l1;
          best.ell2 = l2;
          best.F = gm.f;
          best.profit = -gm.f;
          best.v_star = ymin * (P[l1] + gm.x * (P[l2] - P[l1]));
          best.status = DesignStatus::kFinite;
          best_gain = gain;
          best_kappa = gm.x;
        }
      }
    }
  }
  if (best.status == DesignStatus::kFinite) {
    best.outcomes.clear();
    const double mid = -std::pow(best_kappa * ymin / params.lambda, bb);
    for (std::uint64_t i = 0; i < best.n_minus; ++i) {
      best.outcomes.push_back(i < best.ell1 ? w_min
                              : i < best.ell2 ? mid
                                              : 0.0);
    }
    for (double y : best_gain.y) {
      best.outcomes.push_back(std::pow(y * best.v_star, ba));
    }
  }
  return best;
}

}  // namespace cptlottery
