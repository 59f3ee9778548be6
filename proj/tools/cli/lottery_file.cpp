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

#include "cli/lottery_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "cptlottery/compensated_sum.hpp"

namespace cptlottery::cli {

namespace {

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

}  // namespace

std::vector<LotteryLevel> read_lottery_csv(std::istream& in) {
  std::vector<LotteryLevel> levels;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  std::uint64_t total = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      std::string h = line;
      h.erase(std::remove(h.begin(), h.end(), ' '), h.end());
      if (h != "outcome,count") {
        throw LotteryFileError(lineno, "expected header 'outcome,count'");
      }
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw LotteryFileError(lineno, "expected two comma-separated fields");
    }
    const std::string a = trim(line.substr(0, comma));
    const std::string b = trim(line.substr(comma + 1));
    LotteryLevel lvl;
    std::size_t used = 0;
    try {
      lvl.outcome = std::stod(a, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (a.empty() || used != a.size() || !std::isfinite(lvl.outcome)) {
      throw LotteryFileError(lineno, "outcome is not a finite number");
    }
    const auto res = std::from_chars(b.data(), b.data() + b.size(), lvl.count);
    if (b.empty() || res.ec != std::errc() || res.ptr != b.data() + b.size() ||
        lvl.count == 0) {
      throw LotteryFileError(lineno, "count is not a positive integer");
    }
    if (lvl.count > std::numeric_limits<std::uint64_t>::max() - total) {
      throw LotteryFileError(lineno, "total count overflows");
    }
    total += lvl.count;
    levels.push_back(lvl);
  }
  if (!header) throw LotteryFileError(lineno + 1, "missing header");
  if (levels.empty()) throw LotteryFileError(lineno + 1, "no outcome rows");
  return levels;
}

void write_lottery_csv(std::ostream& out, const DesignResult& design) {
  const auto old = out.precision(17);
  out << "outcome,count\n";
  auto emit = [&](double outcome, std::uint64_t count) {
    if (count > 0) out << outcome << "," << count << "\n";
  };
  for (const auto& l : design.loss_levels) emit(l.outcome, l.count);
  design.gain.for_each_level(emit);
  out.precision(old);
}

LotteryEvaluation evaluate_lottery(const CptParams& params,
                                   std::vector<LotteryLevel> levels) {
  params.validate();
  std::stable_sort(levels.begin(), levels.end(),
                   [](const LotteryLevel& x, const LotteryLevel& y) {
                     return x.outcome < y.outcome;
                   });
  LotteryEvaluation ev;
  for (const auto& l : levels) ev.n += l.count;
  UtilityAccumulator acc(params, ev.n);
  CompensatedSum paid;
  for (const auto& l : levels) {
    acc.add(l.outcome, l.count);
    paid += l.outcome * static_cast<double>(l.count);
  }
  ev.expected_utility = acc.value();
  ev.seller_profit = -paid.value();
  return ev;
}

}  // namespace cptlottery::cli
