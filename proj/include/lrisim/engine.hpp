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

#ifndef LRISIM_ENGINE_HPP_
#define LRISIM_ENGINE_HPP_

// Frame-level game round: devices holding a packet pick a slot from the row
// of their strategy matching the current attempt, the gNB resolves the slots
// (a slot with two or more transmitters is an erasure), acknowledged devices
// reinforce the chosen slot, and finally end-of-frame arrivals drive the
// attempt counters.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "lrisim/config.hpp"
#include "lrisim/random.hpp"
#include "lrisim/strategy.hpp"
#include "lrisim/traffic.hpp"

namespace lrisim {

// x = 0: no packet. x = i > 0: the frame carries the i-th attempt.
struct DeviceState {
  int x = 0;
  bool has_packet() const { return x > 0; }
  friend bool operator==(DeviceState, DeviceState) = default;
};

struct FrameRecord {
  std::int64_t frame_index = 0;
  // Episode index in episodic runs, -1 otherwise.
  std::int64_t episode = -1;
  // End-of-frame arrivals.
  ActivationVector y;
  // Start-of-frame attempt counters.
  std::vector<int> x;
  // Chosen slot 1..K, 0 when idle.
  std::vector<int> a;
  std::vector<std::uint8_t> z;
  // Transmitters per slot, index k-1 for slot k.
  std::vector<int> slot_occupancy;
};

struct SlotOutcome {
  std::vector<std::uint8_t> z;
  std::vector<int> occupancy;
};

SlotOutcome resolve_slots(std::span<const int> actions, int k);

DeviceState transition(DeviceState state, bool reward, bool arrival, int beta,
                       BufferPolicy policy);

struct FrameRules {
  int k = 4;
  int beta = 5;
  double alpha = 0.01;
  BufferPolicy policy = BufferPolicy::kDropOldRestart;
  bool learning = true;
};

// Advances every device by one frame. `record` is overwritten; its buffers are
// reused across calls. frame_index and episode are left for the caller.
void step_frame(std::vector<DeviceState>& states,
                std::vector<StrategyMatrix>& strategies,
                const ActivationVector& arrivals, const FrameRules& rules,
                Rng& policy_rng, FrameRecord& record);

FrameRecord step_frame(std::vector<DeviceState>& states,
                       std::vector<StrategyMatrix>& strategies,
                       const ActivationVector& arrivals, const FrameRules& rules,
                       Rng& policy_rng);

// Closed-form probability that `device` succeeds given it transmits in `slot`:
//   prod_{m != device} (1 - active_prob[m] * p_m(slot | attempt[m])).
// Analytic oracle for tests; the simulation never calls it.
double success_probability(int slot, std::size_t device,
                           std::span<const double> active_prob,
                           std::span<const int> attempt,
                           std::span<const StrategyMatrix> strategies);

// A running scenario: static arena, device states and strategies. Runs are
// measured in rounds: frames when mu > 0, episodes when mu == 0. An episode
// starts with a forced-active frame from an all-idle population and ends when
// every device is idle again; strategies persist across episodes.
class Simulation {
 public:
  using Observer = std::function<void(const FrameRecord&, const TrafficFrame&)>;

  Simulation(const SimConfig& config, Arena arena,
             std::vector<StrategyMatrix> strategies);

  // Runs `rounds` more rounds. With `learning` set, acknowledged devices apply
  // the reward-inaction update; once every strategy is pure and
  // learning_frozen_after_purity is on, learning stops for good.
  void run(std::int64_t rounds, Rng& traffic_rng, Rng& policy_rng,
           bool learning, const Observer& observer = {});

  const Arena& arena() const { return arena_; }
  const std::vector<StrategyMatrix>& strategies() const { return strategies_; }
  const std::vector<DeviceState>& states() const { return states_; }
  std::int64_t frames() const { return frame_index_; }
  std::int64_t rounds() const { return rounds_; }
  bool frozen() const { return frozen_; }

 private:
  void run_frame(bool force_active, Rng& traffic_rng, Rng& policy_rng,
                 bool learning, const Observer& observer);
  void refresh_purity();

  SimConfig config_;
  Arena arena_;
  std::vector<StrategyMatrix> strategies_;
  std::vector<DeviceState> states_;
  std::vector<std::uint8_t> pure_;
  std::size_t pure_count_ = 0;
  std::int64_t frame_index_ = 0;
  std::int64_t rounds_ = 0;
  bool frozen_ = false;
  FrameRecord record_;
  TrafficFrame traffic_;
};

// Starting strategies for the configured scheme: uniform learning rows for
// LRI, frozen uniform rows for S-ALOHA, and for MMPC-style a frozen pure
// assignment built from a warm-up trace drawn on the kWarmup stream of `seed`.
std::vector<StrategyMatrix> initial_strategies(const SimConfig& config,
                                               const Arena& arena,
                                               std::uint64_t seed);

Arena place_devices(const SimConfig& config, std::uint64_t seed);

// Places devices, then runs the learning phase (config.frames or
// config.episodes rounds) on the learning streams of `seed` and returns every
// frame. Throws ConfigError before frame 0 on an invalid config.
std::vector<FrameRecord> run_simulation(const SimConfig& config,
                                        std::uint64_t seed);

// One row per (frame, device): frame,device,x,a,z.
void write_trace_header(std::ostream& os);
void write_trace_rows(std::ostream& os, const FrameRecord& record);

}  // namespace lrisim

#endif  // LRISIM_ENGINE_HPP_
