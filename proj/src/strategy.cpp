// Copyright 2026 The lrisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lrisim/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace lrisim {

StrategyMatrix::StrategyMatrix(int attempts, int slots)
    : attempts_(attempts), slots_(slots) {
  if (attempts < 1 || slots < 1) {
    throw std::invalid_argument("strategy matrix needs beta >= 1 and K >= 1");
  }
  p_.assign(static_cast<std::size_t>(attempts) * slots, 1.0 / slots);
}

void StrategyMatrix::check_attempt(int attempt) const {
  if (attempt < 1 || attempt > attempts_) {
    throw std::out_of_range(
        fmt::format("attempt {} outside 1..{}", attempt, attempts_));
  }
}

std::span<const double> StrategyMatrix::row(int attempt) const {
  check_attempt(attempt);
  return {p_.data() + static_cast<std::size_t>(attempt - 1) * slots_,
          static_cast<std::size_t>(slots_)};
}

std::span<double> StrategyMatrix::row(int attempt) {
  check_attempt(attempt);
  return {p_.data() + static_cast<std::size_t>(attempt - 1) * slots_,
          static_cast<std::size_t>(slots_)};
}

void StrategyMatrix::set_row(int attempt, std::span<const double> pdf) {
  if (pdf.size() != static_cast<std::size_t>(slots_)) {
    throw std::invalid_argument("row length differs from slot count");
  }
  double sum = 0.0;
  for (double v : pdf) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("row entry outside [0,1]");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument(fmt::format("row sums to {}", sum));
  }
  std::copy(pdf.begin(), pdf.end(), row(attempt).begin());
}

StrategyMatrix init_uniform(int k, int beta) { return StrategyMatrix(beta, k); }

int sample_slot(const StrategyMatrix& strategy, int attempt, Rng& rng) {
  const auto p = strategy.row(attempt);
  const double u = uniform01(rng);
  double cumulative = 0.0;
  int last_positive = 1;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0) continue;
    cumulative += p[k];
    last_positive = static_cast<int>(k) + 1;
    if (u < cumulative) return last_positive;
  }
  // Rounding left the cumulative sum just below u.
  return last_positive;
}

void lri_update(StrategyMatrix& strategy, int attempt, int chosen_slot,
                bool reward, double alpha) {
  auto p = strategy.row(attempt);
  if (chosen_slot < 1 || chosen_slot > strategy.slots()) {
    throw std::out_of_range(fmt::format("slot {} outside 1..{}", chosen_slot,
                                        strategy.slots()));
  }
  if (!reward) return;
  const std::size_t chosen = static_cast<std::size_t>(chosen_slot - 1);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k == chosen) {
      p[k] += alpha * (1.0 - p[k]);
    } else {
      p[k] -= alpha * p[k];
    }
  }
  const double sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v = std::min(1.0, v / sum);
}

bool is_pure(const StrategyMatrix& strategy, double purity_epsilon) {
  for (int i = 1; i <= strategy.attempts(); ++i) {
    const auto p = strategy.row(i);
    if (*std::max_element(p.begin(), p.end()) < 1.0 - purity_epsilon) {
      return false;
    }
  }
  return true;
}

std::vector<int> pure_assignment(const StrategyMatrix& strategy) {
  std::vector<int> slots;
  slots.reserve(static_cast<std::size_t>(strategy.attempts()));
  for (int i = 1; i <= strategy.attempts(); ++i) {
    const auto p = strategy.row(i);
    // max_element returns the first maximum, which is the lowest slot.
    slots.push_back(
        static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin()) + 1);
  }
  return slots;
}

void write_strategies_csv(std::ostream& os,
                          std::span<const StrategyMatrix> strategies,
                          bool header, long long round) {
  if (strategies.empty()) return;
  const int k = strategies.front().slots();
  if (header) {
    if (round >= 0) os << "round,";
    os << "device_id,attempt";
    for (int s = 1; s <= k; ++s) os << ",p_" << s;
    os << '\n';
  }
  for (std::size_t n = 0; n < strategies.size(); ++n) {
    for (int i = 1; i <= strategies[n].attempts(); ++i) {
      if (round >= 0) fmt::print(os, "{},", round);
      fmt::print(os, "{},{}", n + 1, i);
      for (double v : strategies[n].row(i)) fmt::print(os, ",{:.17g}", v);
      os << '\n';
    }
  }
}

}  // namespace lrisim
