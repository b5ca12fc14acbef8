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

#include "lrisim/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace lrisim {

namespace {
constexpr double kCostTolerance = 1e-12;
}  // namespace

StrategyMatrix saloha_strategy(int k, int beta) {
  StrategyMatrix s = init_uniform(k, beta);
  s.set_learning(false);
  return s;
}

std::vector<TrafficFrame> sample_active_trace(const Arena& arena, double lambda,
                                              std::int64_t count, Rng& rng) {
  std::vector<TrafficFrame> trace;
  trace.reserve(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  for (std::int64_t i = 0; i < count; ++i) {
    trace.push_back(sample_traffic_frame(arena, lambda, 0.0, true, rng));
  }
  return trace;
}

CorrelationEstimate estimate_correlation(std::span<const TrafficFrame> trace) {
  std::int64_t active = 0;
  std::size_t n = 0;
  for (const auto& f : trace) {
    if (!f.active) continue;
    ++active;
    n = f.y.size();
  }
  if (active < 2) {
    throw std::invalid_argument(
        "correlation estimate needs at least two active frames");
  }

  std::vector<double> ones(n, 0.0);
  std::vector<double> both(n * n, 0.0);
  for (const auto& f : trace) {
    if (!f.active) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!f.y[i]) continue;
      ones[i] += 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (f.y[j]) both[i * n + j] += 1.0;
      }
    }
  }

  CorrelationEstimate est;
  est.n = static_cast<int>(n);
  est.sample_count = active;
  est.rho.assign(n * n, 0.0);
  const double t = static_cast<double>(active);
  for (std::size_t i = 0; i < n; ++i) {
    const double mi = ones[i] / t;
    if (mi > 0.0) est.rho[i * n + i] = 1.0;
    const double vi = mi * (1.0 - mi);
    if (vi <= 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double mj = ones[j] / t;
      const double vj = mj * (1.0 - mj);
      if (vj <= 0.0) continue;
      const double cov = both[i * n + j] / t - mi * mj;
      est.rho[i * n + j] = std::clamp(cov / std::sqrt(vi * vj), -1.0, 1.0);
    }
  }
  return est;
}

std::vector<int> mmpc_assign(const CorrelationEstimate& correlation, int k) {
  const int n = correlation.n;
  auto affinity = [&](int i, int j) {
    return std::max(0.0, correlation.at(i, j));
  };

  std::vector<double> mass(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i) mass[i] += affinity(i, j);
    }
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return mass[a] > mass[b]; });

  std::vector<int> slot_of(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(k));
  for (int device : order) {
    int best = 0;
    double best_cost = 0.0;
    for (int s = 0; s < k; ++s) {
      double cost = 0.0;
      for (int m : members[s]) cost += affinity(device, m);
      if (s == 0) {
        best_cost = cost;
        continue;
      }
      const bool cheaper = cost < best_cost - kCostTolerance;
      const bool tied = std::abs(cost - best_cost) <= kCostTolerance;
      if (cheaper || (tied && members[s].size() < members[best].size())) {
        best = s;
        best_cost = cost;
      }
    }
    members[best].push_back(device);
    slot_of[device] = best + 1;
  }
  return slot_of;
}

std::vector<StrategyMatrix> assignment_strategies(std::span<const int> slots,
                                                  int k, int beta) {
  std::vector<StrategyMatrix> out;
  out.reserve(slots.size());
  std::vector<double> row(static_cast<std::size_t>(k));
  for (int slot : slots) {
    StrategyMatrix s(beta, k);
    std::fill(row.begin(), row.end(), 0.0);
    row[slot - 1] = 1.0;
    for (int i = 1; i <= beta; ++i) s.set_row(i, row);
    s.set_learning(false);
    out.push_back(std::move(s));
  }
  return out;
}

void write_assignment_csv(std::ostream& os, std::span<const int> slots) {
  os << "device_id,slot\n";
  for (std::size_t n = 0; n < slots.size(); ++n) {
    os << n + 1 << ',' << slots[n] << '\n';
  }
}

}  // namespace lrisim
