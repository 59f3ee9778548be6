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

// Acceptance suite. Usage: cptlottery_acceptance <1..10|all>
// Prints one "[PASS]" or "[FAIL]" line per criterion and exits nonzero if
// any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cptlottery/cpt.hpp"
#include "cptlottery/design.hpp"
#include "cptlottery/errors.hpp"
#include "cptlottery/fixed_price.hpp"
#include "cptlottery/gain_solver.hpp"
#include "cptlottery/oracle.hpp"
#include "cptlottery/prize_table.hpp"
#include "test_support.hpp"

namespace cptlottery {
namespace {

using testing::kCanada;
using testing::kGreece;
using testing::kUsa;
using testing::rel_diff;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string failures;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures += " " + what + ";";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Reference bucket counts, top decade first, then the zero row.
struct BucketRef {
  std::vector<std::uint64_t> top_down;
  std::uint64_t zeros;
};

void check_buckets(Outcome& o, const PrizeTable& t, const BucketRef& ref) {
  if (t.buckets.size() != ref.top_down.size()) {
    o.check(false, "bucket count " + std::to_string(t.buckets.size()));
    return;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.top_down.size(); ++i) {
    const auto got = t.buckets[t.buckets.size() - 1 - i].count;
    const double r = rel_diff(static_cast<double>(got),
                              static_cast<double>(ref.top_down[i]));
    worst = std::max(worst, r);
    o.check(r <= 1e-3, "bucket " + std::to_string(i) + " = " +
                           std::to_string(got) + " vs " +
                           std::to_string(ref.top_down[i]));
  }
  const double rz = rel_diff(static_cast<double>(t.zero_count),
                             static_cast<double>(ref.zeros));
  worst = std::max(worst, rz);
  o.check(rz <= 1e-3, "zero row " + std::to_string(t.zero_count));
  o.detail << " worst bucket dev " << fmt("%.2e", worst);
}

// 1. Canada, unconstrained, one billion tickets.
Outcome canada() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const DesignResult d = design_optimal(kCanada, 1'000'000'000);
  const PrizeTable t = expand_design(d);
  const double secs = seconds_since(t0);
  o.detail << "price " << fmt("%.4f", d.ticket_price) << ", profit "
           << fmt("%.4e", d.profit) << ", ratio "
           << fmt("%.4f", 100 * d.gain_ratio()) << "%, max "
           << fmt("%.4e", d.max_prize()) << ", " << fmt("%.0f", secs) << " s;";
  o.check(d.status == DesignStatus::kFinite, "status");
  o.check(std::abs(d.ticket_price - 2.30) <= 0.005, "price");
  o.check(rel_diff(d.profit, 7.76e8) <= 0.005, "profit");
  o.check(std::abs(100 * d.gain_ratio() - 31.83) <= 0.05, "gain ratio");
  o.check(rel_diff(d.max_prize(), 1.36e8) <= 0.01, "max prize");
  check_buckets(o, t,
                {{1, 2, 34, 366, 3872, 39432, 368846, 3398560, 314492608},
                 681696279});
  o.check(secs <= 1800, "runtime");
  return o;
}

// 2. Greece, fixed price 2, fast path, one billion tickets.
Outcome greece() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const DesignResult d = design_fixed_price_fast(kGreece, 1'000'000'000, -2.0);
  const PrizeTable t = expand_design(d);
  const double secs = seconds_since(t0);
  o.detail << "max " << fmt("%.4e", d.max_prize()) << ", profit "
           << fmt("%.4e", d.profit) << ", ratio "
           << fmt("%.5f", 100 * d.gain_ratio()) << "%, "
           << fmt("%.0f", secs) << " s;";
  o.check(d.status == DesignStatus::kFinite, "status");
  o.check(rel_diff(d.max_prize(), 4.11e7) <= 0.01, "max prize");
  o.check(rel_diff(d.profit, 1.91e9) <= 0.005, "profit");
  o.check(std::abs(100 * d.gain_ratio() - 0.078) <= 0.002, "gain ratio");
  check_buckets(o, t,
                {{1, 5, 44, 334, 2577, 20056, 239920, 518488}, 999218575});
  o.check(secs <= 1200, "runtime");

  // Diagnostic only: the reference buckets line up with prizes counted as
  // outcome + ymin^(1/beta) rather than outcome + price.
  const double offset = std::pow(y_min(kGreece, -2.0), kGreece.bbeta());
  std::vector<std::uint64_t> alt;
  d.gain.for_each_level([&](double w, std::uint64_t c) {
    const auto k = static_cast<std::size_t>(decade_index(w + offset));
    if (alt.size() <= k) alt.resize(k + 1, 0);
    alt[k] += c;
  });
  o.detail << " [diagnostic: with prize offset " << fmt("%.4f", offset)
           << " instead of 2 the buckets are";
  for (auto it = alt.rbegin(); it != alt.rend(); ++it) o.detail << " " << *it;
  o.detail << "]";
  return o;
}

// 3. United States, fixed price 2, one thousand tickets.
Outcome usa_fixed() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const DesignResult d = design_fixed_price(kUsa, 1000, -2.0);
  const PrizeTable t = expand_design(d);
  const double secs = seconds_since(t0);
  o.detail << "prizes " << t.positive_count() << ", max "
           << fmt("%.4f", d.max_prize()) << ", profit "
           << fmt("%.4f", d.profit) << ", " << fmt("%.2f", secs) << " s;";
  o.check(t.positive_count() == 576, "prize count");
  o.check(std::abs(d.max_prize() - 312.41) <= 0.02, "max prize");
  o.check(std::abs(d.profit - 339.80) <= 0.05, "profit");
  o.check(secs <= 60, "runtime");
  return o;
}

// 4. United States, unconstrained: one enormous loss ticket.
Outcome usa_unconstrained() {
  Outcome o;
  for (std::uint64_t n : {100'000'000ull, 1'000'000'000ull}) {
    const auto t0 = std::chrono::steady_clock::now();
    const DesignResult d = design_optimal(kUsa, n);
    const double secs = seconds_since(t0);
    o.detail << " n=" << fmt("%.0e", static_cast<double>(n)) << ": N-="
             << d.n_minus << " price " << fmt("%.3e", d.ticket_price)
             << " profit " << fmt("%.3e", d.profit) << " ("
             << fmt("%.0f", secs) << " s);";
    const std::string tag = " at n=" + fmt("%.0e", static_cast<double>(n));
    o.check(d.status == DesignStatus::kFinite, "status" + tag);
    o.check(d.n_minus == 1, "single loss ticket" + tag);
    const double lp = std::log10(d.ticket_price);
    const double lq = std::log10(d.profit);
    o.check(lp >= 38 && lp < 40, "price order" + tag);
    o.check(lq >= 38 && lq < 40, "profit order" + tag);
    if (n == 1'000'000'000ull) {
      o.check(rel_diff(d.ticket_price, 3.53e39) <= 0.02, "price" + tag);
      o.check(rel_diff(d.profit, 5.05e38) <= 0.02, "profit" + tag);
    }
  }
  return o;
}

// 5. Brute-force oracle agreement on tiny instances.
Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260501);
  double worst = 0.0;
  int finite = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const CptParams p = testing::random_params_alpha_lt_beta(rng);
    const std::uint64_t n = 2 + rng() % 5;
    const DesignResult d = design_optimal(p, n);
    OracleConfig cfg;
    cfg.seed = trial;
    const OracleDesign od = oracle_design(p, n, cfg);
    const std::string tag = "instance " + std::to_string(trial);
    o.check(d.status == od.status, tag + " status");
    if (d.status != DesignStatus::kFinite || od.status != d.status) continue;
    ++finite;
    o.check(d.n_plus == od.n_plus && d.n_minus == od.n_minus, tag + " split");
    const double r = rel_diff(d.profit, od.profit);
    worst = std::max(worst, r);
    o.check(r <= 1e-5, tag + " profit");
  }
  double worst_fixed = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const CptParams p = testing::random_params(rng);
    const std::uint64_t n = 2 + rng() % 4;
    const double price = std::exp(testing::uniform(rng, std::log(0.5), std::log(5.0)));
    const DesignResult d = design_fixed_price(p, n, -price);
    OracleConfig cfg;
    cfg.seed = 1000 + trial;
    const OracleDesign od = oracle_fixed(p, n, -price, cfg);
    const std::string tag = "fixed instance " + std::to_string(trial);
    o.check(d.n_plus == od.n_plus && d.n_minus == od.n_minus, tag + " split");
    const double r = rel_diff(d.profit, od.profit);
    worst_fixed = std::max(worst_fixed, r);
    o.check(r <= 1e-5, tag + " profit");
  }
  const double secs = seconds_since(t0);
  o.detail << "200 designs (" << finite << " finite), worst profit dev "
           << fmt("%.2e", worst) << "; 60 fixed-price designs, worst "
           << fmt("%.2e", worst_fixed) << "; " << fmt("%.0f", secs) << " s;";
  o.check(secs <= 300, "runtime");
  return o;
}

// 6. KKT certificates for the closed-form gain solution.
Outcome kkt() {
  Outcome o;
  std::mt19937_64 rng(20260502);
  double worst_stat = 0.0, worst_comp = 0.0, worst_mu = 0.0;
  int rejected = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    const CptParams p = testing::random_params(rng);
    const std::uint64_t k = 1 + rng() % 50;
    const std::uint64_t n = k + rng() % 200;
    const double v = std::exp(testing::uniform(rng, -5, 5));
    const auto h = uniform_gain_weights(p.gamma_plus, k, n);
    const GainSolution s = solve_gain(p, h, v);
    const KktReport r = verify_kkt_gain(p, h, v, s);
    worst_stat = std::max(worst_stat, r.max_stationarity_residual);
    worst_comp = std::max(worst_comp, r.max_complementarity_residual);
    worst_mu = std::min(worst_mu, r.min_mu_relative);
    const std::string tag = "instance " + std::to_string(trial);
    o.check(r.feasible, tag + " feasibility");
    o.check(r.max_stationarity_residual <= 1e-8, tag + " stationarity");
    o.check(r.max_complementarity_residual <= 1e-8, tag + " complementarity");
    o.check(r.min_mu_relative >= -1e-10, tag + " multiplier sign");

    // Negative control: every coordinate moved by 1% in a random direction.
    GainSolution bad = s;
    for (auto& y : bad.y) y *= (rng() & 1) ? 1.01 : 0.99;
    if (verify_kkt_gain(p, h, v, bad).max_residual() >= 1e-4) ++rejected;
  }
  const double rate = static_cast<double>(rejected) / trials;
  o.detail << trials << " instances: stationarity " << fmt("%.1e", worst_stat)
           << ", complementarity " << fmt("%.1e", worst_comp) << ", min mu "
           << fmt("%.1e", worst_mu) << "; perturbed rejected "
           << fmt("%.1f", 100 * rate) << "%;";
  o.check(rate >= 0.99, "negative control rate");
  return o;
}

// 7. Middle level: zero, unbounded and finite regimes.
double grid_polish_min(double cp, double cm, const CptParams& p) {
  const double ba = p.balpha(), bb = p.bbeta();
  const double lcp = std::log(cp), lcm = std::log(cm);
  auto F = [&](double t) {  // t = log v
    return std::exp(lcp + ba * t) - std::exp(lcm + bb * t);
  };
  const double L = 400.0;
  const std::size_t cells = 1'000'000;
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i <= cells; ++i) {
    const double t = -L + 2 * L * static_cast<double>(i) / cells;
    const double f = F(t);
    if (f < best) {
      best = f;
      arg = i;
    }
  }
  double lo = -L + 2 * L * (static_cast<double>(arg) - 1) / cells;
  double hi = -L + 2 * L * (static_cast<double>(arg) + 1) / cells;
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int it = 0; it < 200; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (F(a) < F(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  return std::min(best, F(0.5 * (lo + hi)));
}

Outcome middle_cases() {
  Outcome o;
  std::mt19937_64 rng(20260503);
  int zero_ok = 0, unb_ok = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double a = testing::uniform(rng, 0.1, 0.95);
    const CptParams eq{a, a, testing::uniform(rng, 0.5, 3), 0.5, 0.5};
    const double c1 = std::exp(testing::uniform(rng, -5, 5));
    const double c2 = std::exp(testing::uniform(rng, -5, 5));
    const MidOptimum z = mid_optimum(std::max(c1, c2), std::min(c1, c2), eq);
    if (z.status == DesignStatus::kZero && z.F == 0.0) ++zero_ok;
    const MidOptimum u = mid_optimum(std::min(c1, c2), std::max(c1, c2), eq);
    if (c1 != c2 && u.status == DesignStatus::kUnbounded) ++unb_ok;

    const CptParams p = testing::random_params_alpha_lt_beta(rng, 0.1);
    const double cp = std::exp(testing::uniform(rng, -3, 3));
    const double cm = std::exp(testing::uniform(rng, -3, 3));
    const MidOptimum m = mid_optimum(cp, cm, p);
    const double ref = grid_polish_min(cp, cm, p);
    const double r = rel_diff(m.F, ref);
    worst = std::max(worst, r);
    o.check(m.status == DesignStatus::kFinite && r <= 1e-7,
            "finite pair " + std::to_string(trial));
  }
  o.check(zero_ok == 100, "zero regime " + std::to_string(zero_ok));
  o.check(unb_ok == 100, "unbounded regime " + std::to_string(unb_ok));
  o.detail << "zero " << zero_ok << "/100, unbounded " << unb_ok
           << "/100, finite worst dev " << fmt("%.2e", worst) << ";";
  return o;
}

// 8. The buyer is exactly indifferent (or receives exactly eps).
Outcome binding_ir() {
  Outcome o;
  double worst = 0.0;
  int count = 0;
  auto check_design = [&](const DesignResult& d, double target,
                          const std::string& tag) {
    if (d.status != DesignStatus::kFinite) return;
    ++count;
    const double eu = design_expected_utility(d);
    const double scale = std::max(1.0, std::abs(value(d.params, d.ticket_price)));
    const double r = std::abs(eu - target) / scale;
    worst = std::max(worst, r);
    o.check(r <= 1e-9, tag);
  };
  for (const CptParams& p : {kCanada, kUsa}) {
    for (std::uint64_t n : {2ull, 10ull, 1000ull, 100000ull, 1000000ull}) {
      check_design(design_optimal(p, n), 0.0, "preset n=" + std::to_string(n));
    }
    for (double eps : {1e-3, 0.1, 1.0, 10.0}) {
      check_design(design_optimal(p, 100000, eps), eps,
                   "eps=" + fmt("%g", eps));
    }
  }
  std::mt19937_64 rng(20260504);
  for (int trial = 0; trial < 100; ++trial) {
    const CptParams p = testing::random_params_alpha_lt_beta(rng);
    const std::uint64_t n = 2 + rng() % 20000;
    const double eps = trial % 2 ? 0.0 : std::exp(testing::uniform(rng, -5, 2));
    check_design(design_optimal(p, n, eps), eps,
                 "random " + std::to_string(trial));
  }
  check_design(design_fixed_price(kUsa, 1000, -2.0), 0.0, "usa fixed");
  check_design(design_fixed_price(kCanada, 500, -1.0), 0.0, "canada fixed");
  check_design(design_fixed_price_fast(kGreece, 1000000, -2.0), 0.0,
               "greece fixed");
  o.detail << count << " designs, worst |EU - target| / max(1, U(price)) "
           << fmt("%.2e", worst) << ";";
  return o;
}

// 9. Linear running time and a monotone transitional index.
Outcome linearity() {
  Outcome o;
  std::vector<double> per_ticket;
  for (std::uint64_t n : {1'000'000ull, 10'000'000ull, 100'000'000ull}) {
    const std::string tag = " at n=" + fmt("%.0e", static_cast<double>(n));
    const auto t0 = std::chrono::steady_clock::now();
    const DesignResult d = design_optimal(kCanada, n);
    const double secs = seconds_since(t0);
    per_ticket.push_back(secs / static_cast<double>(n));
    o.detail << " n=" << fmt("%.0e", static_cast<double>(n)) << " "
             << fmt("%.2f", secs) << " s;";
    o.check(d.status == DesignStatus::kFinite, "status" + tag);

    bool monotone = true, minimal = true;
    if (n <= 10'000'000ull) {
      const GainTable t = precompute_gain_table(kCanada, n);
      for (std::uint64_t k = 2; k <= n; ++k) {
        monotone = monotone && t.J_of[k] >= t.J_of[k - 1];
      }
    } else {
      // The explicit table would not fit in memory here; the sweep builds
      // the same sequence and can certify each index.
      GainSweep sweep(kCanada, n);
      std::uint64_t last = 0;
      for (std::uint64_t k = 1; k <= n; ++k) {
        sweep.advance();
        monotone = monotone && sweep.J() >= last;
        minimal = minimal && sweep.index_is_minimal();
        last = sweep.J();
      }
    }
    o.check(monotone, "J monotone" + tag);
    o.check(minimal, "J minimal" + tag);
  }
  const auto [lo, hi] = std::minmax_element(per_ticket.begin(), per_ticket.end());
  o.detail << " per-ticket time spread " << fmt("%.2f", *hi / *lo) << "x;";
  o.check(*hi / *lo <= 2.0, "linear scaling");
  return o;
}

// 10. Independent algorithm paths agree.
Outcome cross_algorithms() {
  Outcome o;
  double worst = 0.0;
  std::vector<CptParams> cases = {kCanada, kUsa};
  std::mt19937_64 rng(20260505);
  for (int i = 0; i < 8; ++i) cases.push_back(testing::random_params_alpha_lt_beta(rng));
  int compared = 0;
  for (const CptParams& p : cases) {
    for (std::uint64_t n : {2ull, 3ull, 17ull, 100ull, 512ull, 1000ull}) {
      const DesignResult a = design_optimal(p, n);
      const DesignResult b = design_optimal_naive(p, n);
      ++compared;
      const std::string tag = "naive n=" + std::to_string(n);
      o.check(a.status == b.status, tag + " status");
      if (a.status != DesignStatus::kFinite) continue;
      o.check(a.n_plus == b.n_plus && a.gain.J == b.gain.J, tag + " indices");
      const double r = std::max({rel_diff(a.profit, b.profit),
                                 rel_diff(a.ticket_price, b.ticket_price),
                                 rel_diff(a.max_prize(), b.max_prize())});
      worst = std::max(worst, r);
      o.check(r <= 1e-10, tag + " values");
    }
  }
  double worst_fixed = 0.0;
  for (std::uint64_t n : {2ull, 10ull, 100ull, 1000ull, 10000ull}) {
    const DesignResult a = design_fixed_price(kGreece, n, -2.0);
    const DesignResult b = design_fixed_price_fast(kGreece, n, -2.0);
    const double r = rel_diff(a.profit, b.profit);
    worst_fixed = std::max(worst_fixed, r);
    o.check(r <= 1e-9, "fixed n=" + std::to_string(n));
  }
  o.detail << compared << " naive comparisons, worst dev " << fmt("%.2e", worst)
           << "; fixed vs fast worst dev " << fmt("%.2e", worst_fixed) << ";";
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"Canada reproduction", canada},
      {"Greece fixed-price reproduction", greece},
      {"US fixed-price reproduction", usa_fixed},
      {"US unconstrained structure", usa_unconstrained},
      {"oracle equivalence", oracle_equivalence},
      {"KKT certification", kkt},
      {"middle-level case table", middle_cases},
      {"binding individual rationality", binding_ir},
      {"linear scaling and monotone index", linearity},
      {"cross-algorithm agreement", cross_algorithms},
  };
  return all;
}

bool run_one(std::size_t i) {
  const Criterion& c = criteria()[i - 1];
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  std::string line = o.detail.str();
  if (!o.failures.empty()) line += " failed:" + o.failures;
  std::printf("[%s] criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i,
              c.title, line.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace
}  // namespace cptlottery

int main(int argc, char** argv) {
  using cptlottery::criteria;
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <1..%zu|all>\n", argv[0], criteria().size());
    return 2;
  }
  const std::string arg = argv[1];
  bool ok = true;
  if (arg == "all") {
    for (std::size_t i = 1; i <= criteria().size(); ++i) {
      ok = cptlottery::run_one(i) && ok;
    }
    return ok ? 0 : 1;
  }
  char* end = nullptr;
  const unsigned long i = std::strtoul(arg.c_str(), &end, 10);
  if (*end != '\0' || i < 1 || i > criteria().size()) {
    std::fprintf(stderr, "unknown criterion '%s'\n", arg.c_str());
    return 2;
  }
  return cptlottery::run_one(i) ? 0 : 1;
}
