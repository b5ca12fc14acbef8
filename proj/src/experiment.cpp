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

#include "lrisim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include <fmt/format.h>
#include <omp.h>

#include "lrisim/baselines.hpp"
#include "lrisim/engine.hpp"

namespace lrisim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs `rounds` rounds on `sim` and folds every frame into a tally.
DeliveryTally run_tallied(Simulation& sim, std::int64_t rounds, Rng& traffic,
                          Rng& policy, bool learning) {
  DeliveryTally tally(sim.arena().size());
  sim.run(rounds, traffic, policy, learning,
          [&](const FrameRecord& r, const TrafficFrame&) { tally.add(r); });
  return tally;
}

}  // namespace

MetricsReport evaluate_strategies(const SimConfig& config, const Arena& arena,
                                  std::vector<StrategyMatrix> strategies,
                                  std::uint64_t seed, std::int64_t rounds) {
  Simulation sim(config, arena, std::move(strategies));
  Rng traffic = make_stream(seed, Stream::kEvalTraffic);
  Rng policy = make_stream(seed, Stream::kEvalPolicy);
  return make_report(run_tallied(sim, rounds, traffic, policy, false));
}

std::vector<std::int64_t> checkpoint_rounds(std::int64_t horizon, int count) {
  std::vector<std::int64_t> out;
  if (count <= 0) return out;
  for (int j = 0; j <= count; ++j) {
    out.push_back(horizon * j / count);
  }
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ReplicationResult run_replication(const SimConfig& config, int index) {
  ReplicationResult result;
  result.index = index;
  result.seed = config.base_seed + static_cast<std::uint64_t>(index);
  const std::uint64_t seed = result.seed;

  const Arena arena = place_devices(config, seed);
  auto strategies = initial_strategies(config, arena, seed);
  if (config.scheme == Scheme::kMmpc) {
    for (const auto& s : strategies) result.assignment.push_back(pure_assignment(s)[0]);
  }

  const std::int64_t eval_rounds = config.eval_rounds();
  const bool learns = config.scheme == Scheme::kLri;
  std::optional<DeliveryTally> learning_tally;

  if (learns || eval_rounds == 0) {
    Simulation sim(config, arena, std::move(strategies));
    Rng traffic = make_stream(seed, Stream::kLearnTraffic);
    Rng policy = make_stream(seed, Stream::kLearnPolicy);
    const std::int64_t horizon = config.learning_rounds();

    if (learns && config.gain_checkpoints > 0) {
      DeliveryTally tally(arena.size());
      const Simulation::Observer observe =
          [&](const FrameRecord& r, const TrafficFrame&) { tally.add(r); };
      auto& curve = result.report.throughput_curve;
      std::int64_t done = 0;
      for (std::int64_t t : checkpoint_rounds(horizon, config.gain_checkpoints)) {
        sim.run(t - done, traffic, policy, true, observe);
        done = t;
        const auto snapshot = evaluate_strategies(
            config, arena, sim.strategies(), seed, config.curve_eval_rounds);
        curve.push_back({t, snapshot.throughput.value_or(kNaN)});
      }
      std::vector<double> values;
      for (const auto& p : curve) values.push_back(p.value);
      if (auto gain = throughput_gain(values, values.front(), values.back())) {
        for (std::size_t j = 0; j < curve.size(); ++j) {
          result.report.gain_series.push_back({curve[j].round, (*gain)[j]});
        }
      }
      learning_tally = std::move(tally);
    } else {
      learning_tally = run_tallied(sim, horizon, traffic, policy, learns);
    }
    strategies = sim.strategies();
  }

  auto curve = std::move(result.report.throughput_curve);
  auto gain = std::move(result.report.gain_series);
  if (eval_rounds > 0) {
    result.report =
        evaluate_strategies(config, arena, strategies, seed, eval_rounds);
  } else {
    result.report = make_report(*learning_tally);
  }
  result.report.throughput_curve = std::move(curve);
  result.report.gain_series = std::move(gain);

  result.pure = std::all_of(strategies.begin(), strategies.end(),
                            [&](const StrategyMatrix& s) {
                              return is_pure(s, config.purity_epsilon);
                            });
  result.strategies = std::move(strategies);
  return result;
}

ExperimentResult aggregate(const SimConfig& config,
                           std::vector<ReplicationResult> replications) {
  ExperimentResult out;
  out.config = config;
  out.replications = std::move(replications);

  std::vector<double> delays, throughputs;
  for (const auto& r : out.replications) {
    if (r.report.delay) delays.push_back(*r.report.delay);
    if (r.report.throughput) throughputs.push_back(*r.report.throughput);
  }
  out.delay = summarize(delays);
  out.throughput = summarize(throughputs);

  if (!out.replications.empty() &&
      !out.replications.front().report.throughput_curve.empty()) {
    const auto& first = out.replications.front().report.throughput_curve;
    for (std::size_t j = 0; j < first.size(); ++j) {
      double sum = 0.0;
      for (const auto& r : out.replications) {
        sum += r.report.throughput_curve[j].value;
      }
      out.throughput_curve.push_back(
          {first[j].round, sum / static_cast<double>(out.replications.size())});
    }
    std::vector<double> values;
    for (const auto& p : out.throughput_curve) values.push_back(p.value);
    if (auto gain = throughput_gain(values, values.front(), values.back())) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        out.gain_series.push_back({out.throughput_curve[j].round, (*gain)[j]});
      }
    }
  }
  return out;
}

ExperimentResult run_experiment(const SimConfig& config, int jobs) {
  if (auto problems = validate(config); !problems.empty()) {
    throw ConfigError(std::move(problems));
  }
  const int n = config.replications;
  std::vector<ReplicationResult> results(static_cast<std::size_t>(n));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int i = 0; i < n; ++i) {
    try {
      results[i] = run_replication(config, i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return aggregate(config, std::move(results));
}

ExperimentResult run_experiment_serial(const SimConfig& config) {
  if (auto problems = validate(config); !problems.empty()) {
    throw ConfigError(std::move(problems));
  }
  std::vector<ReplicationResult> results;
  results.reserve(static_cast<std::size_t>(config.replications));
  for (int i = 0; i < config.replications; ++i) {
    results.push_back(run_replication(config, i));
  }
  return aggregate(config, std::move(results));
}

std::vector<ExperimentResult> sweep(const SimConfig& config,
                                    std::string_view parameter,
                                    std::span<const std::string> values,
                                    int jobs) {
  if (std::find(std::begin(kSweepParameters), std::end(kSweepParameters),
                parameter) == std::end(kSweepParameters)) {
    throw ConfigError(
        {fmt::format("cannot sweep over '{}'; expected one of lambda, mu, "
                     "alpha, beta, n_devices, k_slots",
                     parameter)});
  }
  std::vector<SimConfig> points;
  for (const auto& v : values) {
    SimConfig c = config;
    set_parameter(c, parameter, v);
    points.push_back(c);
  }
  std::vector<ExperimentResult> out;
  out.reserve(points.size());
  for (const auto& c : points) out.push_back(run_experiment(c, jobs));
  return out;
}

}  // namespace lrisim
