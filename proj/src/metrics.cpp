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

#include "lrisim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace lrisim {

namespace {
constexpr double kGainTolerance = 1e-9;
}  // namespace

void DeliveryTally::add(const FrameRecord& record) {
  if (successes.size() < record.z.size()) {
    successes.resize(record.z.size(), 0);
    attempt_sum.resize(record.z.size(), 0);
  }
  ++frames;
  if (record.episode >= 0) {
    episodic = true;
    if (record.episode != last_episode_) {
      ++episodes;
      last_episode_ = record.episode;
    }
  }
  for (std::size_t n = 0; n < record.z.size(); ++n) {
    if (!record.z[n]) continue;
    ++successes[n];
    attempt_sum[n] += record.x[n];
  }
}

DeliveryTally tally_trace(std::span<const FrameRecord> trace) {
  DeliveryTally tally(trace.empty() ? 0 : trace.front().z.size());
  for (const auto& r : trace) tally.add(r);
  return tally;
}

std::optional<DelayEstimate> delay_estimate(const DeliveryTally& tally) {
  double sum = 0.0;
  int contributing = 0;
  int excluded = 0;
  for (std::size_t n = 0; n < tally.successes.size(); ++n) {
    if (tally.successes[n] == 0) {
      ++excluded;
      continue;
    }
    sum += static_cast<double>(tally.attempt_sum[n]) /
           static_cast<double>(tally.successes[n]);
    ++contributing;
  }
  if (contributing == 0) return std::nullopt;
  return DelayEstimate{sum / contributing, excluded};
}

std::optional<double> packet_transmission_time(const DeliveryTally& tally) {
  if (auto d = delay_estimate(tally)) return d->value;
  return std::nullopt;
}

std::optional<double> packet_transmission_time(
    std::span<const FrameRecord> trace) {
  return packet_transmission_time(tally_trace(trace));
}

std::vector<double> per_device_success_rate(const DeliveryTally& tally) {
  std::vector<double> rate(tally.successes.size(), 0.0);
  const auto rounds = tally.rounds();
  if (rounds == 0) return rate;
  for (std::size_t n = 0; n < rate.size(); ++n) {
    rate[n] = static_cast<double>(tally.successes[n]) /
              static_cast<double>(rounds);
  }
  return rate;
}

std::optional<double> system_throughput(const DeliveryTally& tally) {
  const auto delay = packet_transmission_time(tally);
  if (!delay) return std::nullopt;
  const auto rate = per_device_success_rate(tally);
  return std::accumulate(rate.begin(), rate.end(), 0.0) / *delay;
}

std::optional<double> system_throughput(std::span<const FrameRecord> trace) {
  return system_throughput(tally_trace(trace));
}

std::optional<std::vector<double>> throughput_gain(
    std::span<const double> t_series, double t_saloha, double t_lri_converged) {
  const double span = t_lri_converged - t_saloha;
  if (std::abs(span) < kGainTolerance) return std::nullopt;
  std::vector<double> gain;
  gain.reserve(t_series.size());
  for (double t : t_series) gain.push_back((t - t_saloha) / span);
  return gain;
}

std::vector<WindowPoint> windowed_throughput(std::span<const FrameRecord> trace,
                                             std::int64_t window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  std::vector<WindowPoint> series;
  const auto total = static_cast<std::int64_t>(trace.size());
  for (std::int64_t begin = 0; begin < total; begin += window) {
    const auto len = std::min(window, total - begin);
    const auto block = trace.subspan(static_cast<std::size_t>(begin),
                                     static_cast<std::size_t>(len));
    series.push_back({block.back().frame_index + 1, system_throughput(block)});
  }
  return series;
}

MetricsReport make_report(const DeliveryTally& tally) {
  MetricsReport report;
  if (auto d = delay_estimate(tally)) {
    report.delay = d->value;
    report.excluded_devices = d->excluded_devices;
  } else {
    report.excluded_devices = static_cast<int>(tally.successes.size());
  }
  report.throughput = system_throughput(tally);
  report.per_device_success_rate = per_device_success_rate(tally);
  report.rounds = tally.rounds();
  return report;
}

std::optional<Summary> summarize(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  Summary s{mean, 0.0, static_cast<int>(values.size())};
  if (values.size() < 2) return s;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  s.ci95 = boost::math::quantile(dist, 0.975) * sd / std::sqrt(n);
  return s;
}

}  // namespace lrisim
