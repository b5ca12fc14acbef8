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

#include "lrisim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lrisim {

namespace {
constexpr int kAreaGrid = 1000;
}  // namespace

Arena place_devices(double side, double radius, std::size_t n, Rng& rng) {
  Arena arena;
  arena.side = side;
  arena.radius = radius;
  arena.devices.reserve(n);
  std::uniform_real_distribution<double> coord(0.0, side);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    arena.devices.push_back({x, y});
  }
  return arena;
}

bool sample_frame_active(double mu, Rng& rng) {
  if (mu <= 0.0) return false;
  return uniform01(rng) < -std::expm1(-mu);
}

std::vector<Point> sample_events(double lambda, const Arena& arena, Rng& rng) {
  std::vector<Point> events;
  if (lambda <= 0.0) return events;
  const double mean = lambda * arena.side * arena.side;
  const auto count = std::poisson_distribution<long>(mean)(rng);
  events.reserve(static_cast<std::size_t>(count));
  std::uniform_real_distribution<double> coord(0.0, arena.side);
  for (long i = 0; i < count; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    events.push_back({x, y});
  }
  return events;
}

ActivationVector activations_from_events(const Arena& arena,
                                         std::span<const Point> events) {
  ActivationVector y(arena.size(), 0);
  const double r2 = arena.radius * arena.radius;
  for (std::size_t n = 0; n < arena.size(); ++n) {
    const Point d = arena.devices[n];
    for (const Point& e : events) {
      const double dx = d.x - e.x;
      const double dy = d.y - e.y;
      if (dx * dx + dy * dy <= r2) {
        y[n] = 1;
        break;
      }
    }
  }
  return y;
}

double clipped_disc_area(Point center, double radius, double side) {
  const double h = 2.0 * radius / kAreaGrid;
  const double r2 = radius * radius;
  long inside = 0;
  for (int i = 0; i < kAreaGrid; ++i) {
    const double x = center.x - radius + (i + 0.5) * h;
    if (x < 0.0 || x > side) continue;
    const double dx2 = (x - center.x) * (x - center.x);
    for (int j = 0; j < kAreaGrid; ++j) {
      const double y = center.y - radius + (j + 0.5) * h;
      if (y < 0.0 || y > side) continue;
      const double dy = y - center.y;
      if (dx2 + dy * dy <= r2) ++inside;
    }
  }
  return static_cast<double>(inside) * h * h;
}

double marginal_activation_prob(Point position, double lambda,
                                const Arena& arena) {
  if (lambda <= 0.0) return 0.0;
  const double area = clipped_disc_area(position, arena.radius, arena.side);
  return -std::expm1(-lambda * area);
}

void sample_traffic_frame(const Arena& arena, double lambda, double mu,
                          bool force_active, Rng& rng, TrafficFrame& out) {
  out.active = force_active || sample_frame_active(mu, rng);
  out.event_count = 0;
  if (!out.active) {
    out.y.assign(arena.size(), 0);
    return;
  }
  const auto events = sample_events(lambda, arena, rng);
  out.event_count = events.size();
  out.y = activations_from_events(arena, events);
}

TrafficFrame sample_traffic_frame(const Arena& arena, double lambda, double mu,
                                  bool force_active, Rng& rng) {
  TrafficFrame frame;
  sample_traffic_frame(arena, lambda, mu, force_active, rng, frame);
  return frame;
}

}  // namespace lrisim
