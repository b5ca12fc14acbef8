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

#include "lrisim/engine.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "lrisim/baselines.hpp"

namespace lrisim {

SlotOutcome resolve_slots(std::span<const int> actions, int k) {
  SlotOutcome out;
  out.z.assign(actions.size(), 0);
  out.occupancy.assign(static_cast<std::size_t>(k), 0);
  for (int a : actions) {
    if (a < 0 || a > k) {
      throw std::out_of_range(fmt::format("action {} outside 0..{}", a, k));
    }
    if (a > 0) ++out.occupancy[a - 1];
  }
  for (std::size_t n = 0; n < actions.size(); ++n) {
    const int a = actions[n];
    out.z[n] = (a > 0 && out.occupancy[a - 1] == 1) ? 1 : 0;
  }
  return out;
}

DeviceState transition(DeviceState state, bool reward, bool arrival, int beta,
                       BufferPolicy policy) {
  if (state.x == 0 || state.x >= beta || reward) {
    // Idle, last attempt (delivered or discarded), or acknowledged: the
    // buffer is free for whatever arrived at the end of the frame.
    return {arrival ? 1 : 0};
  }
  if (arrival && policy == BufferPolicy::kDropOldRestart) return {1};
  return {state.x + 1};
}

void step_frame(std::vector<DeviceState>& states,
                std::vector<StrategyMatrix>& strategies,
                const ActivationVector& arrivals, const FrameRules& rules,
                Rng& policy_rng, FrameRecord& record) {
  const std::size_t n_devices = states.size();
  record.y = arrivals;
  record.x.resize(n_devices);
  record.a.assign(n_devices, 0);
  record.z.assign(n_devices, 0);
  record.slot_occupancy.assign(static_cast<std::size_t>(rules.k), 0);

  for (std::size_t n = 0; n < n_devices; ++n) {
    record.x[n] = states[n].x;
    if (states[n].x > 0) {
      record.a[n] = sample_slot(strategies[n], states[n].x, policy_rng);
      ++record.slot_occupancy[record.a[n] - 1];
    }
  }
  for (std::size_t n = 0; n < n_devices; ++n) {
    const int a = record.a[n];
    if (a == 0 || record.slot_occupancy[a - 1] != 1) continue;
    record.z[n] = 1;
    if (rules.learning && strategies[n].learning()) {
      lri_update(strategies[n], states[n].x, a, true, rules.alpha);
    }
  }
  for (std::size_t n = 0; n < n_devices; ++n) {
    states[n] = transition(states[n], record.z[n] != 0, arrivals[n] != 0,
                           rules.beta, rules.policy);
  }
}

FrameRecord step_frame(std::vector<DeviceState>& states,
                       std::vector<StrategyMatrix>& strategies,
                       const ActivationVector& arrivals, const FrameRules& rules,
                       Rng& policy_rng) {
  FrameRecord record;
  step_frame(states, strategies, arrivals, rules, policy_rng, record);
  return record;
}

double success_probability(int slot, std::size_t device,
                           std::span<const double> active_prob,
                           std::span<const int> attempt,
                           std::span<const StrategyMatrix> strategies) {
  double q = 1.0;
  for (std::size_t m = 0; m < strategies.size(); ++m) {
    if (m == device || active_prob[m] == 0.0) continue;
    q *= 1.0 - active_prob[m] * strategies[m].at(attempt[m], slot);
  }
  return q;
}

Simulation::Simulation(const SimConfig& config, Arena arena,
                       std::vector<StrategyMatrix> strategies)
    : config_(config),
      arena_(std::move(arena)),
      strategies_(std::move(strategies)),
      states_(arena_.size()),
      pure_(arena_.size(), 0) {
  if (strategies_.size() != arena_.size()) {
    throw std::invalid_argument("one strategy per device required");
  }
  refresh_purity();
}

void Simulation::refresh_purity() {
  pure_count_ = 0;
  for (std::size_t n = 0; n < strategies_.size(); ++n) {
    pure_[n] = is_pure(strategies_[n], config_.purity_epsilon) ? 1 : 0;
    pure_count_ += pure_[n];
  }
}

void Simulation::run_frame(bool force_active, Rng& traffic_rng,
                           Rng& policy_rng, bool learning,
                           const Observer& observer) {
  sample_traffic_frame(arena_, config_.lambda, config_.mu, force_active,
                       traffic_rng, traffic_);
  const FrameRules rules{config_.k_slots, config_.beta, config_.alpha,
                         config_.buffer_policy, learning && !frozen_};
  step_frame(states_, strategies_, traffic_.y, rules, policy_rng, record_);
  record_.frame_index = frame_index_++;
  record_.episode = config_.episodic() ? rounds_ : -1;

  if (rules.learning && config_.learning_frozen_after_purity) {
    for (std::size_t n = 0; n < states_.size(); ++n) {
      if (!record_.z[n] || !strategies_[n].learning()) continue;
      const std::uint8_t now =
          is_pure(strategies_[n], config_.purity_epsilon) ? 1 : 0;
      pure_count_ += now;
      pure_count_ -= pure_[n];
      pure_[n] = now;
    }
    if (pure_count_ == strategies_.size()) frozen_ = true;
  }
  if (observer) observer(record_, traffic_);
}

void Simulation::run(std::int64_t rounds, Rng& traffic_rng, Rng& policy_rng,
                     bool learning, const Observer& observer) {
  for (std::int64_t r = 0; r < rounds; ++r) {
    if (config_.episodic()) {
      std::fill(states_.begin(), states_.end(), DeviceState{});
      run_frame(true, traffic_rng, policy_rng, learning, observer);
      while (std::any_of(states_.begin(), states_.end(),
                         [](DeviceState s) { return s.has_packet(); })) {
        run_frame(false, traffic_rng, policy_rng, learning, observer);
      }
    } else {
      run_frame(frame_index_ == 0, traffic_rng, policy_rng, learning, observer);
    }
    ++rounds_;
  }
}

std::vector<StrategyMatrix> initial_strategies(const SimConfig& config,
                                               const Arena& arena,
                                               std::uint64_t seed) {
  switch (config.scheme) {
    case Scheme::kLri:
      return std::vector<StrategyMatrix>(
          arena.size(), init_uniform(config.k_slots, config.beta));
    case Scheme::kSaloha:
      return std::vector<StrategyMatrix>(
          arena.size(), saloha_strategy(config.k_slots, config.beta));
    case Scheme::kMmpc: {
      Rng warmup = make_stream(seed, Stream::kWarmup);
      const auto trace = sample_active_trace(arena, config.lambda,
                                             config.warmup_active_frames,
                                             warmup);
      const auto assignment =
          mmpc_assign(estimate_correlation(trace), config.k_slots);
      return assignment_strategies(assignment, config.k_slots, config.beta);
    }
  }
  throw std::logic_error("unknown scheme");
}

Arena place_devices(const SimConfig& config, std::uint64_t seed) {
  Rng rng = make_stream(seed, Stream::kPlacement);
  return place_devices(config.side, config.radius,
                       static_cast<std::size_t>(config.n_devices), rng);
}

std::vector<FrameRecord> run_simulation(const SimConfig& config,
                                        std::uint64_t seed) {
  if (auto problems = validate(config); !problems.empty()) {
    throw ConfigError(std::move(problems));
  }
  Arena arena = place_devices(config, seed);
  auto strategies = initial_strategies(config, arena, seed);
  Simulation sim(config, std::move(arena), std::move(strategies));
  Rng traffic = make_stream(seed, Stream::kLearnTraffic);
  Rng policy = make_stream(seed, Stream::kLearnPolicy);
  std::vector<FrameRecord> trace;
  sim.run(config.learning_rounds(), traffic, policy, true,
          [&](const FrameRecord& r, const TrafficFrame&) { trace.push_back(r); });
  return trace;
}

void write_trace_header(std::ostream& os) { os << "frame,device,x,a,z\n"; }

void write_trace_rows(std::ostream& os, const FrameRecord& record) {
  for (std::size_t n = 0; n < record.x.size(); ++n) {
    fmt::print(os, "{},{},{},{},{}\n", record.frame_index, n + 1, record.x[n],
               record.a[n], static_cast<int>(record.z[n]));
  }
}

}  // namespace lrisim
