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

#ifndef LRISIM_TESTS_ORACLES_HPP_
#define LRISIM_TESTS_ORACLES_HPP_

// Brute-force reference computations, independent of the simulation path.

#include <cmath>
#include <span>
#include <vector>

#include "lrisim/strategy.hpp"

namespace lrisim::testing {

// P(device succeeds | it transmits in `slot`) by enumerating every joint
// action of the other devices, each idle with probability 1 - active[m] or
// transmitting in slot j with probability active[m] * p_m(j | attempt[m]).
inline double enumerate_success(int slot, std::size_t device,
                                std::span<const double> active,
                                std::span<const int> attempt,
                                std::span<const StrategyMatrix> strategies) {
  const std::size_t n = strategies.size();
  const int k = strategies.front().slots();
  std::vector<int> action(n, 0);  // 0 idle, 1..k slot
  double success = 0.0;
  while (true) {
    double prob = 1.0;
    bool alone = true;
    for (std::size_t m = 0; m < n; ++m) {
      if (m == device) continue;
      if (action[m] == 0) {
        prob *= 1.0 - active[m];
      } else {
        prob *= active[m] * strategies[m].at(attempt[m], action[m]);
        if (action[m] == slot) alone = false;
      }
    }
    if (alone) success += prob;
    // Odometer increment over the other devices.
    std::size_t m = 0;
    for (; m < n; ++m) {
      if (m == device) continue;
      if (++action[m] <= k) break;
      action[m] = 0;
    }
    if (m == n) break;
  }
  return success;
}

// Success probability of every device when all hold a packet and pick slots
// from `rows[n]`, by enumerating the k^n joint outcomes.
inline std::vector<double> enumerate_all_active(
    const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  const int k = static_cast<int>(rows.front().size());
  std::vector<int> action(n, 0);
  std::vector<double> success(n, 0.0);
  while (true) {
    double prob = 1.0;
    for (std::size_t m = 0; m < n; ++m) prob *= rows[m][action[m]];
    for (std::size_t m = 0; m < n; ++m) {
      bool alone = true;
      for (std::size_t o = 0; o < n; ++o) {
        if (o != m && action[o] == action[m]) alone = false;
      }
      if (alone) success[m] += prob;
    }
    std::size_t m = 0;
    for (; m < n; ++m) {
      if (++action[m] < k) break;
      action[m] = 0;
    }
    if (m == n) break;
  }
  return success;
}

inline double binomial_sigma(double p, double n) {
  return std::sqrt(p * (1.0 - p) / n);
}

}  // namespace lrisim::testing

#endif  // LRISIM_TESTS_ORACLES_HPP_
