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

#ifndef LRISIM_TRAFFIC_HPP_
#define LRISIM_TRAFFIC_HPP_

// Correlated packet generation. Active frames follow a temporal Poisson
// process; inside an active frame, events land in the square according to a
// spatial Poisson process and every device within the activation radius of an
// event generates a packet. Devices close to each other therefore tend to
// activate together.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lrisim/random.hpp"

namespace lrisim {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Geometry of the cell: a square of side `side` with static devices.
struct Arena {
  double side = 10.0;
  double radius = 1.25;
  std::vector<Point> devices;

  std::size_t size() const { return devices.size(); }
};

// y_n = 1 iff device n generated a packet this frame.
using ActivationVector = std::vector<std::uint8_t>;

// One frame worth of traffic.
struct TrafficFrame {
  bool active = false;
  std::size_t event_count = 0;
  ActivationVector y;
};

Arena place_devices(double side, double radius, std::size_t n, Rng& rng);

// Probability that a unit-length frame holds at least one arrival is 1-e^-mu.
// mu == 0 never touches the generator.
bool sample_frame_active(double mu, Rng& rng);

// Poisson(lambda * side^2) events, uniform over the square.
std::vector<Point> sample_events(double lambda, const Arena& arena, Rng& rng);

ActivationVector activations_from_events(const Arena& arena,
                                         std::span<const Point> events);

// Area of the radius-r disc around `center` clipped to [0,side]^2, by midpoint
// rule on a fixed 1000x1000 grid over the disc bounding box.
double clipped_disc_area(Point center, double radius, double side);

// w_n = 1 - exp(-lambda * A_n).
double marginal_activation_prob(Point position, double lambda,
                                const Arena& arena);

// Draws one frame. `force_active` makes the frame active regardless of mu
// (frame 0 of every run is forced).
TrafficFrame sample_traffic_frame(const Arena& arena, double lambda, double mu,
                                  bool force_active, Rng& rng);
void sample_traffic_frame(const Arena& arena, double lambda, double mu,
                          bool force_active, Rng& rng, TrafficFrame& out);

}  // namespace lrisim

#endif  // LRISIM_TRAFFIC_HPP_
