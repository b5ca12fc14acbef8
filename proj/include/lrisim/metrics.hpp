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

#ifndef LRISIM_METRICS_HPP_
#define LRISIM_METRICS_HPP_

// Evaluation quantities computed from frame traces:
//   L   average attempt index of delivered packets, averaged over devices,
//   T   (sum over devices of successes per round) / L,
//   G_T learning-curve throughput mapped affinely so that S-ALOHA is 0 and the
//       converged LRI throughput is 1.
// A round is a frame, or an episode when the trace is episodic. Undefined
// quantities come back as std::nullopt, never as zero.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lrisim/engine.hpp"

namespace lrisim {

// Streaming sufficient statistics of a trace.
struct DeliveryTally {
  std::vector<std::int64_t> successes;
  std::vector<std::int64_t> attempt_sum;
  std::int64_t frames = 0;
  std::int64_t episodes = 0;
  bool episodic = false;

  explicit DeliveryTally(std::size_t n_devices = 0)
      : successes(n_devices, 0), attempt_sum(n_devices, 0) {}

  void add(const FrameRecord& record);
  std::int64_t rounds() const { return episodic ? episodes : frames; }

 private:
  std::int64_t last_episode_ = -1;
};

DeliveryTally tally_trace(std::span<const FrameRecord> trace);

struct DelayEstimate {
  double value = 0.0;
  // Devices without a single delivery, left out of the device average.
  int excluded_devices = 0;
};

std::optional<DelayEstimate> delay_estimate(const DeliveryTally& tally);
std::optional<double> packet_transmission_time(const DeliveryTally& tally);
std::optional<double> packet_transmission_time(
    std::span<const FrameRecord> trace);

std::optional<double> system_throughput(const DeliveryTally& tally);
std::optional<double> system_throughput(std::span<const FrameRecord> trace);

// Successes per round for each device (empirical utility).
std::vector<double> per_device_success_rate(const DeliveryTally& tally);

// Nullopt when |t_lri_converged - t_saloha| is below 1e-9.
std::optional<std::vector<double>> throughput_gain(
    std::span<const double> t_series, double t_saloha, double t_lri_converged);

struct WindowPoint {
  // Frame index one past the window end.
  std::int64_t frame = 0;
  std::optional<double> throughput;
};

// Throughput of consecutive `window`-frame blocks, one point per block end;
// a trailing partial block is emitted too. A window at least as long as the
// trace yields one point equal to system_throughput.
std::vector<WindowPoint> windowed_throughput(std::span<const FrameRecord> trace,
                                             std::int64_t window);

struct CurvePoint {
  std::int64_t round = 0;
  double value = 0.0;
};

struct MetricsReport {
  std::optional<double> delay;
  std::optional<double> throughput;
  std::vector<double> per_device_success_rate;
  int excluded_devices = 0;
  std::int64_t rounds = 0;
  // Learning curve T(t) at checkpoints and its gain normalization; empty
  // unless gain tracking was requested.
  std::vector<CurvePoint> throughput_curve;
  std::vector<CurvePoint> gain_series;
};

MetricsReport make_report(const DeliveryTally& tally);

// Mean with a two-sided 95% Student-t half-width.
struct Summary {
  double mean = 0.0;
  double ci95 = 0.0;
  int count = 0;
};

std::optional<Summary> summarize(std::span<const double> values);

}  // namespace lrisim

#endif  // LRISIM_METRICS_HPP_
