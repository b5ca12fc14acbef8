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

#include <algorithm>
#include <cmath>
#include <numeric>

#include <doctest.h>

#include "lrisim/baselines.hpp"
#include "lrisim/engine.hpp"
#include "lrisim/metrics.hpp"
#include "support/oracles.hpp"

namespace lrisim {
namespace {

// Frame where device n is at attempt x[n] and z[n] reports the outcome.
FrameRecord record(std::int64_t frame, std::vector<int> x,
                   std::vector<std::uint8_t> z) {
  FrameRecord r;
  r.frame_index = frame;
  r.x = std::move(x);
  r.z = std::move(z);
  r.y.assign(r.x.size(), 0);
  r.a.assign(r.x.size(), 0);
  return r;
}

TEST_CASE("packet transmission time") {
  SUBCASE("delivery on the third attempt") {
    std::vector<FrameRecord> t{record(0, {1}, {0}), record(1, {2}, {0}),
                               record(2, {3}, {1})};
    CHECK(*packet_transmission_time(t) == 3.0);
  }
  SUBCASE("devices are averaged after per-device means") {
    std::vector<FrameRecord> t{record(0, {1, 1}, {1, 1}),
                               record(1, {0, 1}, {0, 0}),
                               record(2, {0, 2}, {0, 0}),
                               record(3, {0, 3}, {0, 1})};
    CHECK(*packet_transmission_time(t) == 1.5);
  }
  SUBCASE("nothing delivered is undefined") {
    std::vector<FrameRecord> t{record(0, {1, 1}, {0, 0})};
    CHECK_FALSE(packet_transmission_time(t).has_value());
    CHECK_FALSE(system_throughput(t).has_value());
    const auto report = make_report(tally_trace(t));
    CHECK_FALSE(report.delay.has_value());
    CHECK(report.excluded_devices == 2);
  }
  SUBCASE("silent devices are excluded and counted") {
    std::vector<FrameRecord> t{record(0, {2, 1, 0}, {1, 0, 0})};
    const auto d = delay_estimate(tally_trace(t));
    REQUIRE(d.has_value());
    CHECK(d->value == 2.0);
    CHECK(d->excluded_devices == 2);
  }
}

TEST_CASE("system throughput") {
  SUBCASE("distinct pure slots under full load") {
    std::vector<FrameRecord> t;
    for (int f = 0; f < 100; ++f) t.push_back(record(f, {1, 1}, {1, 1}));
    CHECK(*packet_transmission_time(t) == 1.0);
    CHECK(*system_throughput(t) == 2.0);
  }
  SUBCASE("two S-ALOHA devices on two slots") {
    std::vector<StrategyMatrix> s(2, saloha_strategy(2, 1));
    std::vector<DeviceState> states(2, DeviceState{1});
    const FrameRules rules{2, 1, 0.01, BufferPolicy::kDropOldRestart, true};
    Rng rng(3);
    DeliveryTally tally(2);
    const int frames = 50000;
    FrameRecord r;
    for (int f = 0; f < frames; ++f) {
      step_frame(states, s, ActivationVector{1, 1}, rules, rng, r);
      tally.add(r);
    }
    const auto rate = per_device_success_rate(tally);
    const double sigma = testing::binomial_sigma(0.5, frames);
    CHECK(std::abs(rate[0] - 0.5) <= 3 * sigma);
    CHECK(std::abs(rate[1] - 0.5) <= 3 * sigma);
    // Both succeed together or not at all, so T = 2 x Bernoulli(1/2) mean.
    CHECK(std::abs(*system_throughput(tally) - 1.0) <= 6 * sigma);
  }
  SUBCASE("collision-free first-attempt deliveries equal the offered load") {
    Rng rng(12);
    std::vector<FrameRecord> t;
    std::int64_t generated = 0;
    for (int f = 0; f < 1000; ++f) {
      std::vector<int> x(5, 0);
      std::vector<std::uint8_t> z(5, 0);
      for (int n = 0; n < 5; ++n) {
        if (uniform01(rng) < 0.3) {
          x[n] = 1;
          z[n] = 1;
          ++generated;
        }
      }
      t.push_back(record(f, x, z));
    }
    CHECK(*system_throughput(t) == doctest::Approx(generated / 1000.0));
  }
}

TEST_CASE("with one attempt per packet L is exactly 1") {
  SimConfig c;
  c.beta = 1;
  c.mu = 0.5;
  c.lambda = 0.1;
  c.frames = 5000;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto trace = run_simulation(c, seed);
    REQUIRE(packet_transmission_time(trace).has_value());
    CHECK(*packet_transmission_time(trace) == 1.0);
  }
}

TEST_CASE("throughput is invariant under device and slot relabeling") {
  SimConfig c;
  c.mu = 0.5;
  c.frames = 3000;
  const auto trace = run_simulation(c, 4);
  const auto base = *system_throughput(trace);

  std::vector<std::size_t> perm(static_cast<std::size_t>(c.n_devices));
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(8);
  std::shuffle(perm.begin(), perm.end(), rng);
  const std::vector<int> slot_map{0, 3, 1, 4, 2};
  auto relabeled = trace;
  for (auto& r : relabeled) {
    const auto old = r;
    for (std::size_t n = 0; n < perm.size(); ++n) {
      r.x[n] = old.x[perm[n]];
      r.z[n] = old.z[perm[n]];
      r.y[n] = old.y[perm[n]];
      r.a[n] = slot_map[static_cast<std::size_t>(old.a[perm[n]])];
    }
  }
  CHECK(*system_throughput(relabeled) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("episodic tallies count episodes as rounds") {
  std::vector<FrameRecord> t{record(0, {1}, {0}), record(1, {2}, {1}),
                             record(2, {1}, {1})};
  t[0].episode = 0;
  t[1].episode = 0;
  t[2].episode = 1;
  const auto tally = tally_trace(t);
  CHECK(tally.episodic);
  CHECK(tally.rounds() == 2);
  CHECK(per_device_success_rate(tally)[0] == 1.0);
  CHECK(*system_throughput(tally) == doctest::Approx(1.0 / 1.5));
}

TEST_CASE("throughput gain") {
  const std::vector<double> series{0.5, 0.75, 1.0};
  const auto g = throughput_gain(series, 0.5, 1.0);
  REQUIRE(g.has_value());
  CHECK(*g == std::vector<double>{0.0, 0.5, 1.0});

  const std::vector<double> flat(7, 0.8);
  CHECK(*throughput_gain(flat, 0.8, 1.3) == std::vector<double>(7, 0.0));

  CHECK_FALSE(throughput_gain(series, 0.7, 0.7).has_value());
  CHECK_FALSE(throughput_gain(series, 0.7, 0.7 + 1e-12).has_value());
}

TEST_CASE("windowed throughput") {
  std::vector<FrameRecord> t;
  for (int f = 0; f < 100; ++f) t.push_back(record(f, {1, 2}, {1, f % 2 == 0}));

  SUBCASE("constant pattern gives a flat series") {
    const auto w = windowed_throughput(t, 10);
    REQUIRE(w.size() == 10);
    for (std::size_t i = 0; i < w.size(); ++i) {
      CHECK(w[i].frame == static_cast<std::int64_t>(10 * (i + 1)));
      CHECK(*w[i].throughput == doctest::Approx(*w[0].throughput));
    }
  }
  SUBCASE("a window covering the trace equals system_throughput") {
    for (std::int64_t len : {100, 1000}) {
      const auto w = windowed_throughput(t, len);
      REQUIRE(w.size() == 1);
      CHECK(*w[0].throughput == *system_throughput(t));
    }
  }
  SUBCASE("trailing partial block and bad windows") {
    CHECK(windowed_throughput(t, 30).size() == 4);
    CHECK_THROWS_AS(windowed_throughput(t, 0), std::invalid_argument);
  }
}

TEST_CASE("learning raises windowed throughput") {
  // Compare smoothed early and late throughput over independent runs.
  SimConfig c;
  c.mu = 1.0;
  c.lambda = 0.04;
  c.beta = 1;
  c.alpha = 0.05;
  c.frames = 60000;
  int improved = 0;
  const int runs = 10;
  for (int seed = 1; seed <= runs; ++seed) {
    const auto w =
        windowed_throughput(run_simulation(c, static_cast<std::uint64_t>(seed)),
                            6000);
    double early = 0.0, late = 0.0;
    for (std::size_t i = 0; i < 2; ++i) {
      early += w[i].throughput.value_or(0.0);
      late += w[w.size() - 1 - i].throughput.value_or(0.0);
    }
    improved += late > early;
  }
  CHECK(improved >= 8);
}

TEST_CASE("summarize") {
  const std::vector<double> v{1.0, 2.0, 3.0};
  const auto s = summarize(v);
  REQUIRE(s.has_value());
  CHECK(s->mean == 2.0);
  CHECK(s->count == 3);
  // t_{0.975, 2} = 4.302653; sd = 1.
  CHECK(s->ci95 == doctest::Approx(4.302653 / std::sqrt(3.0)).epsilon(1e-6));

  const std::vector<double> one{5.0};
  CHECK(summarize(one)->ci95 == 0.0);
  CHECK_FALSE(summarize(std::span<const double>{}).has_value());
}

}  // namespace
}  // namespace lrisim
