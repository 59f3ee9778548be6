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

// cptlottery: design seller-optimal lotteries for prospect-theory buyers.
//
//   cptlottery design --preset canada --n 1e9
//   cptlottery design --preset usa --n 1000 --price 2
//   cptlottery eval --preset canada --file lottery.csv
//   cptlottery oracle --preset canada --n 4
//
// Exit codes: 0 success, 2 bad input, 3 unbounded profit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "cli/lottery_file.hpp"
#include "cli/presets.hpp"
#include "cli/report.hpp"
#include "cptlottery/design.hpp"
#include "cptlottery/errors.hpp"
#include "cptlottery/fixed_price.hpp"
#include "cptlottery/oracle.hpp"
#include "cptlottery/prize_table.hpp"

namespace {

using namespace cptlottery;
using namespace cptlottery::cli;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitUnbounded = 3;

// Quadratic fixed-price search beyond this many tickets would run for hours.
constexpr std::uint64_t kMaxQuadraticN = 200'000;
// max_buyer_utility keeps four arrays of n doubles.
constexpr std::uint64_t kMaxTableN = 50'000'000;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamFlags {
  std::string preset;
  std::string n_text;
  std::optional<double> alpha, beta, lambda, gamma_plus, gamma_minus;

  void attach(CLI::App* app) {
    app->add_option("--preset", preset, "canada | usa | greece")
        ->check(CLI::IsMember({"canada", "usa", "greece"}));
    app->add_option("--n", n_text, "number of tickets (scientific notation ok)");
    app->add_option("--alpha", alpha, "gain curvature");
    app->add_option("--beta", beta, "loss curvature");
    app->add_option("--lambda", lambda, "loss aversion");
    app->add_option("--gamma-plus", gamma_plus, "gain weighting curvature");
    app->add_option("--gamma-minus", gamma_minus, "loss weighting curvature");
  }

  [[nodiscard]] std::optional<Preset> chosen() const {
    if (preset.empty()) return std::nullopt;
    return find_preset(preset);
  }

  [[nodiscard]] CptParams params() const {
    CptParams p;
    const auto pre = chosen();
    if (pre) {
      p = pre->params;
    } else if (!(alpha && beta && lambda && gamma_plus && gamma_minus)) {
      throw UsageError(
          "give --preset or all of --alpha --beta --lambda --gamma-plus "
          "--gamma-minus");
    }
    if (alpha) p.alpha = *alpha;
    if (beta) p.beta = *beta;
    if (lambda) p.lambda = *lambda;
    if (gamma_plus) p.gamma_plus = *gamma_plus;
    if (gamma_minus) p.gamma_minus = *gamma_minus;
    p.validate();
    return p;
  }

  [[nodiscard]] std::uint64_t n() const {
    if (n_text.empty()) {
      if (const auto pre = chosen()) return pre->default_n;
      throw UsageError("--n is required without --preset");
    }
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(n_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != n_text.size() || !std::isfinite(x) || x < 1.0 ||
        x > 9.0e15 || x != std::floor(x)) {
      throw UsageError("--n must be a positive integer, e.g. 1000 or 1e9");
    }
    return static_cast<std::uint64_t>(x);
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw UsageError("cannot open " + out_path + " for writing");
  f << text;
}

std::string unbounded_message(const CptParams& p) {
  std::ostringstream os;
  os << "profit is unbounded: ";
  if (p.alpha > p.beta) {
    os << "alpha (" << p.alpha << ") > beta (" << p.beta
       << "), so the buyer discounts ever larger losses faster than the "
          "seller pays for matching gains";
  } else {
    os << "alpha equals beta (" << p.alpha
       << ") and some split earns more on losses than its gains cost, so "
          "scaling that lottery up raises profit without limit";
  }
  os << "\n";
  return os.str();
}

int run_design(const ParamFlags& flags, std::optional<double> price_flag,
               bool unconstrained, std::optional<double> eps_flag,
               std::optional<double> floor_flag, const std::string& format,
               const std::string& out_path, const std::string& lottery_out,
               unsigned threads) {
  const CptParams params = flags.params();
  const std::uint64_t n = flags.n();
  if (n < 2) throw UsageError("--n must be at least 2");
  std::optional<double> price = price_flag;
  if (!price && !unconstrained) {
    if (const auto pre = flags.chosen()) price = pre->price;
  }
  if (price && !(*price > 0.0)) throw UsageError("--price must be positive");
  if (eps_flag && floor_flag) {
    throw UsageError("--epsilon and --profit-floor are mutually exclusive");
  }
  if (price && (eps_flag || floor_flag)) {
    throw UsageError(
        "--epsilon/--profit-floor apply to the uniform-price design only; "
        "drop --price (or pass --unconstrained)");
  }
  if (eps_flag && !(*eps_flag >= 0.0)) {
    throw UsageError("--epsilon must be nonnegative");
  }

  const auto t0 = std::chrono::steady_clock::now();
  DesignResult design;
  double eps = eps_flag.value_or(0.0);
  if (price) {
    if (params.alpha >= params.beta) {
      design = design_fixed_price_fast(params, n, -*price);
    } else {
      if (n > kMaxQuadraticN) {
        throw UsageError("fixed price with alpha < beta is quadratic in n; "
                         "use --n <= 200000");
      }
      design = design_fixed_price(params, n, -*price, threads);
    }
  } else {
    if (floor_flag) {
      if (n > kMaxTableN) throw UsageError("--profit-floor needs --n <= 5e7");
      eps = max_buyer_utility(params, n, *floor_flag);
      std::cerr << "buyer utility guarantee: " << eps << "\n";
    }
    design = design_optimal(params, n, eps);
  }

  if (design.status == DesignStatus::kUnbounded) {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    const Report rep = make_report(design, nullptr, ms);
    std::cerr << unbounded_message(params);
    if (format == "json") {
      emit(to_json(rep).dump(2) + "\n", out_path);
    } else if (format == "table") {
      emit(render_table(rep), out_path);
    }
    return kExitUnbounded;
  }

  const PrizeTable table = expand_design(design);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  const Report rep = make_report(design, &table, ms);
  if (format == "json") {
    emit(to_json(rep).dump(2) + "\n", out_path);
  } else if (format == "csv") {
    emit(render_csv(rep), out_path);
  } else {
    emit(render_table(rep), out_path);
  }
  if (!lottery_out.empty()) {
    std::ofstream f(lottery_out);
    if (!f) throw UsageError("cannot open " + lottery_out + " for writing");
    write_lottery_csv(f, design);
  }
  return kExitOk;
}

int run_eval(const ParamFlags& flags, const std::string& file,
             const std::string& format) {
  const CptParams params = flags.params();
  std::ifstream in(file);
  if (!in) throw UsageError("cannot open " + file);
  std::vector<LotteryLevel> levels;
  try {
    levels = read_lottery_csv(in);
  } catch (const LotteryFileError& e) {
    throw UsageError(file + ": " + e.what());
  }
  const LotteryEvaluation ev = evaluate_lottery(params, std::move(levels));
  if (format == "json") {
    nlohmann::json j = {{"n", ev.n},
                        {"expected_utility", ev.expected_utility},
                        {"seller_profit", ev.seller_profit}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("Tickets: %s\n", group_thousands(ev.n).c_str());
    std::printf("Expected utility per ticket: %.17g\n", ev.expected_utility);
    std::printf("Seller profit: %.17g\n", ev.seller_profit);
  }
  return kExitOk;
}

int run_oracle(const ParamFlags& flags, std::optional<double> price) {
  const CptParams params = flags.params();
  const std::uint64_t n = flags.n();
  if (n < 2 || n > kOracleMaxTickets) {
    throw UsageError("oracle comparisons need 2 <= --n <= 8");
  }
  OracleDesign o;
  DesignResult d;
  if (price) {
    if (!(*price > 0.0)) throw UsageError("--price must be positive");
    o = oracle_fixed(params, n, -*price);
    d = params.alpha >= params.beta ? design_fixed_price_fast(params, n, -*price)
                                    : design_fixed_price(params, n, -*price);
  } else {
    o = oracle_design(params, n);
    d = design_optimal(params, n);
  }
  std::printf("%-14s %22s %22s %12s\n", "field", "oracle", "engine", "delta");
  auto row = [](const char* name, double a, double b) {
    const double rel =
        a == b ? 0.0 : std::abs(a - b) / std::max(std::abs(a), std::abs(b));
    std::printf("%-14s %22.12g %22.12g %12.3e\n", name, a, b, rel);
  };
  std::printf("%-14s %22s %22s\n", "status",
              std::string(to_string(o.status)).c_str(),
              std::string(to_string(d.status)).c_str());
  row("n_minus", static_cast<double>(o.n_minus), static_cast<double>(d.n_minus));
  row("n_plus", static_cast<double>(o.n_plus), static_cast<double>(d.n_plus));
  row("profit", o.profit, d.profit);
  row("v_star", o.v_star, d.v_star);
  row("ticket_price", o.ticket_price, d.ticket_price);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seller-optimal lottery design for prospect-theory buyers"};
  app.require_subcommand(1);

  ParamFlags design_flags;
  std::optional<double> price, eps, profit_floor;
  bool unconstrained = false;
  std::string format = "table";
  std::string out_path;
  std::string lottery_out;
  std::string buckets = "decade";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto* design = app.add_subcommand("design", "compute an optimal lottery");
  design_flags.attach(design);
  design->add_option("--price", price, "fixed ticket price (> 0)");
  design->add_flag("--unconstrained", unconstrained,
                   "ignore a preset's fixed ticket price");
  design->add_option("--epsilon", eps, "guaranteed buyer utility (>= 0)");
  design->add_option("--profit-floor", profit_floor,
                     "maximize buyer utility subject to this profit");
  design->add_option("--format", format, "table | json | csv")
      ->check(CLI::IsMember({"table", "json", "csv"}));
  design->add_option("--out", out_path, "write the report here");
  design->add_option("--lottery-out", lottery_out,
                     "write the lottery as outcome,count CSV");
  design->add_option("--buckets", buckets, "prize bucketing (decade)")
      ->check(CLI::IsMember({"decade"}));
  design->add_option("--threads", threads, "worker threads")
      ->check(CLI::PositiveNumber);

  ParamFlags eval_flags;
  std::string eval_file;
  std::string eval_format = "table";
  auto* eval = app.add_subcommand("eval", "evaluate a lottery file");
  eval_flags.attach(eval);
  eval->add_option("--file", eval_file, "CSV with header outcome,count")
      ->required();
  eval->add_option("--format", eval_format, "table | json")
      ->check(CLI::IsMember({"table", "json"}));

  ParamFlags oracle_flags;
  std::optional<double> oracle_price;
  auto* oracle = app.add_subcommand("oracle", "compare with brute force");
  oracle_flags.attach(oracle);
  oracle->add_option("--price", oracle_price, "fixed ticket price (> 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (design->parsed()) {
      return run_design(design_flags, price, unconstrained, eps, profit_floor,
                        format, out_path, lottery_out, threads);
    }
    if (eval->parsed()) return run_eval(eval_flags, eval_file, eval_format);
    return run_oracle(oracle_flags, oracle_price);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const cptlottery::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}
