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

#ifndef LRISIM_BASELINES_HPP_
#define LRISIM_BASELINES_HPP_

// Reference schemes. S-ALOHA picks slots uniformly and never learns. The
// MMPC-style baseline is a centralized deterministic assignment that groups
// devices by activation correlation so that devices which tend to fire
// together land in different slots. It is a greedy reconstruction, not the
// published MMPC algorithm, and only makes sense without retransmissions.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lrisim/random.hpp"
#include "lrisim/strategy.hpp"
#include "lrisim/traffic.hpp"

namespace lrisim {

struct CorrelationEstimate {
  int n = 0;
  // Row-major n x n Pearson coefficients.
  std::vector<double> rho;
  std::int64_t sample_count = 0;

  double at(int i, int j) const {
    return rho[static_cast<std::size_t>(i) * n + j];
  }
};

// Uniform rows, flagged non-learning.
StrategyMatrix saloha_strategy(int k, int beta);

// `count` forced-active frames drawn from the spatial event process.
std::vector<TrafficFrame> sample_active_trace(const Arena& arena, double lambda,
                                              std::int64_t count, Rng& rng);

// Pearson correlation of the binary activation sequences over the active
// frames of `trace`. Devices that never (or always) activate get zero
// off-diagonal correlation; the diagonal is 1 for devices seen active. Throws
// std::invalid_argument with fewer than two active frames.
CorrelationEstimate estimate_correlation(std::span<const TrafficFrame> trace);

// Greedy anti-affinity assignment. Devices are visited in decreasing order of
// positive correlation mass; each takes the slot whose current members have
// the least positive correlation with it, then the least loaded slot, then the
// lowest index. Negative coefficients count as zero: the event process cannot
// produce them, so they are estimation noise. Returns slots 1..k.
std::vector<int> mmpc_assign(const CorrelationEstimate& correlation, int k);

// Frozen pure strategies, every attempt pinned to the assigned slot.
std::vector<StrategyMatrix> assignment_strategies(std::span<const int> slots,
                                                  int k, int beta);

void write_assignment_csv(std::ostream& os, std::span<const int> slots);

}  // namespace lrisim

#endif  // LRISIM_BASELINES_HPP_
