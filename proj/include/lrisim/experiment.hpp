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

#ifndef LRISIM_EXPERIMENT_HPP_
#define LRISIM_EXPERIMENT_HPP_

// Replication kernel and its drivers. Replication i uses seed base_seed + i
// and derives independent traffic and policy streams from it, so two schemes
// with the same base seed face identical arrivals. run_experiment spreads
// replications over OpenMP threads; run_experiment_serial is the reference
// loop kept for tests and benchmarks. Both reduce by replication index and
// return identical results.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lrisim/config.hpp"
#include "lrisim/metrics.hpp"
#include "lrisim/strategy.hpp"

namespace lrisim {

struct ReplicationResult {
  int index = 0;
  std::uint64_t seed = 0;
  MetricsReport report;
  std::vector<StrategyMatrix> strategies;
  // MMPC-style slot per device, empty for other schemes.
  std::vector<int> assignment;
  bool pure = false;
};

struct ExperimentResult {
  SimConfig config;
  std::vector<ReplicationResult> replications;
  std::optional<Summary> delay;
  std::optional<Summary> throughput;
  // Learning curve averaged over replications and its gain normalization
  // (S-ALOHA level = first checkpoint, converged level = last checkpoint).
  std::vector<CurvePoint> throughput_curve;
  std::vector<CurvePoint> gain_series;
};

// Frozen evaluation of `strategies` on the evaluation streams of `seed`.
MetricsReport evaluate_strategies(const SimConfig& config, const Arena& arena,
                                  std::vector<StrategyMatrix> strategies,
                                  std::uint64_t seed, std::int64_t rounds);

// Learning-phase checkpoints 0 = t_0 < ... < t_C = horizon, evenly spaced.
std::vector<std::int64_t> checkpoint_rounds(std::int64_t horizon, int count);

ReplicationResult run_replication(const SimConfig& config, int index);

ExperimentResult aggregate(const SimConfig& config,
                           std::vector<ReplicationResult> replications);

// `jobs` <= 0 leaves the thread count to OpenMP.
ExperimentResult run_experiment(const SimConfig& config, int jobs = 0);
ExperimentResult run_experiment_serial(const SimConfig& config);

inline constexpr std::string_view kSweepParameters[] = {
    "lambda", "mu", "alpha", "beta", "n_devices", "k_slots"};

// One experiment per value, each with the same base seed. Throws ConfigError
// for an unknown parameter or an invalid value.
std::vector<ExperimentResult> sweep(const SimConfig& config,
                                    std::string_view parameter,
                                    std::span<const std::string> values,
                                    int jobs = 0);

}  // namespace lrisim

#endif  // LRISIM_EXPERIMENT_HPP_
