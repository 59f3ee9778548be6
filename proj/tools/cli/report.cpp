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

#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cptlottery::cli {

namespace {

using nlohmann::json;

json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

double number_from(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string money(double x) {
  if (!std::isfinite(x)) return "inf";
  if (std::abs(x) >= 1e6) return "$" + fmt("%.2e", x);
  return "$" + fmt("%.2f", x);
}

std::string decade_label(const PrizeBucket& b) {
  auto exp_label = [](double x) {
    const int k = static_cast<int>(std::lround(std::log10(x)));
    return k == 1 ? std::string("10") : "10^" + std::to_string(k);
  };
  const std::string lo = b.lo == 0.0 ? std::string(">0") : exp_label(b.lo);
  return lo + " - " + exp_label(b.hi);
}

}  // namespace

std::string group_thousands(std::uint64_t value) {
  std::string digits = std::to_string(value);
  std::string out;
  const std::size_t lead = digits.size() % 3;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i != 0 && (i + 3 - lead) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

std::string format_odds(std::uint64_t n, std::uint64_t count) {
  if (count == 0) return "-";
  const double odds = static_cast<double>(n) / static_cast<double>(count);
  const double whole = std::floor(odds);
  auto cents = static_cast<std::uint64_t>(std::llround((odds - whole) * 100.0));
  auto integral = static_cast<std::uint64_t>(whole);
  if (cents == 100) {
    cents = 0;
    ++integral;
  }
  char frac[8];
  std::snprintf(frac, sizeof frac, "%02llu",
                static_cast<unsigned long long>(cents));
  return "1 in " + group_thousands(integral) + "." + frac;
}

Report make_report(const DesignResult& design, const PrizeTable* table,
                   double timing_ms) {
  Report r;
  r.params = design.params;
  r.n = design.n;
  r.n_minus = design.n_minus;
  r.n_plus = design.n_plus;
  r.ticket_price = design.ticket_price;
  r.v_star = design.v_star;
  r.profit = design.profit;
  r.max_prize = design.max_prize();
  r.gain_ratio = design.gain_ratio();
  r.status = std::string(to_string(design.status));
  if (table != nullptr) {
    r.buckets = table->buckets;
    r.zero_count = table->zero_count;
    r.max_prize = table->max_prize;
  }
  r.timing_ms = timing_ms;
  return r;
}

json to_json(const Report& r) {
  json buckets = json::array();
  for (const auto& b : r.buckets) {
    buckets.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
  }
  return {
      {"params",
       {{"alpha", r.params.alpha},
        {"beta", r.params.beta},
        {"lambda", r.params.lambda},
        {"gamma_plus", r.params.gamma_plus},
        {"gamma_minus", r.params.gamma_minus}}},
      {"n", r.n},
      {"n_minus", r.n_minus},
      {"n_plus", r.n_plus},
      {"ticket_price", number_or_null(r.ticket_price)},
      {"v_star", number_or_null(r.v_star)},
      {"profit", number_or_null(r.profit)},
      {"max_prize", number_or_null(r.max_prize)},
      {"gain_ratio", r.gain_ratio},
      {"status", r.status},
      {"buckets", buckets},
      {"zero_count", r.zero_count},
      {"timing_ms", r.timing_ms},
  };
}

Report report_from_json(const json& j) {
  Report r;
  const json& p = j.at("params");
  r.params = {p.at("alpha").get<double>(), p.at("beta").get<double>(),
              p.at("lambda").get<double>(), p.at("gamma_plus").get<double>(),
              p.at("gamma_minus").get<double>()};
  r.n = j.at("n").get<std::uint64_t>();
  r.n_minus = j.at("n_minus").get<std::uint64_t>();
  r.n_plus = j.at("n_plus").get<std::uint64_t>();
  r.ticket_price = number_from(j.at("ticket_price"));
  r.v_star = number_from(j.at("v_star"));
  r.profit = number_from(j.at("profit"));
  r.max_prize = number_from(j.at("max_prize"));
  r.gain_ratio = j.at("gain_ratio").get<double>();
  r.status = j.at("status").get<std::string>();
  for (const auto& b : j.at("buckets")) {
    r.buckets.push_back({b.at("lo").get<double>(), b.at("hi").get<double>(),
                         b.at("count").get<std::uint64_t>()});
  }
  r.zero_count = j.at("zero_count").get<std::uint64_t>();
  r.timing_ms = j.at("timing_ms").get<double>();
  return r;
}

std::string render_table(const Report& r) {
  std::ostringstream os;
  const auto& p = r.params;
  os << "Parameters: alpha=" << p.alpha << " beta=" << p.beta
     << " lambda=" << p.lambda << " gamma+=" << p.gamma_plus
     << " gamma-=" << p.gamma_minus << "\n";
  os << "Tickets: " << group_thousands(r.n) << " (" << group_thousands(r.n_plus)
     << " winning, " << group_thousands(r.n_minus) << " losing)\n";
  os << "Status: " << r.status << "\n";
  if (r.status == "unbounded") {
    os << "Profit: unbounded\n";
    os << "Wall time: " << fmt("%.3f", r.timing_ms / 1000.0) << " s\n";
    return os.str();
  }

  char line[160];
  std::snprintf(line, sizeof line, "\n%-16s %16s   %s\n", "Prize", "Number",
                "Odds");
  os << line;
  for (auto it = r.buckets.rbegin(); it != r.buckets.rend(); ++it) {
    if (it->count == 0) continue;
    std::snprintf(line, sizeof line, "%-16s %16s   %s\n",
                  decade_label(*it).c_str(), group_thousands(it->count).c_str(),
                  format_odds(r.n, it->count).c_str());
    os << line;
  }
  if (r.zero_count > 0) {
    std::snprintf(line, sizeof line, "%-16s %16s   %s\n", "0",
                  group_thousands(r.zero_count).c_str(),
                  format_odds(r.n, r.zero_count).c_str());
    os << line;
  }
  std::uint64_t positive = 0;
  for (const auto& b : r.buckets) positive += b.count;
  os << "\n";
  os << "Ticket price: " << money(r.ticket_price) << "\n";
  os << "Max prize: " << money(r.max_prize) << "\n";
  os << "Overall odds of a prize: " << format_odds(r.n, positive) << "\n";
  os << "Gain ratio: " << fmt("%.4f", 100.0 * r.gain_ratio) << "%\n";
  os << "Seller profit: " << money(r.profit) << "\n";
  os << "Wall time: " << fmt("%.3f", r.timing_ms / 1000.0) << " s\n";
  return os.str();
}

std::string render_csv(const Report& r) {
  std::ostringstream os;
  os.precision(17);
  os << "prize_lo,prize_hi,count\n";
  for (auto it = r.buckets.rbegin(); it != r.buckets.rend(); ++it) {
    os << it->lo << "," << it->hi << "," << it->count << "\n";
  }
  os << 0 << "," << 0 << "," << r.zero_count << "\n";
  return os.str();
}

}  // namespace cptlottery::cli
