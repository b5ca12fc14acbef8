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

#ifndef LRISIM_STRATEGY_HPP_
#define LRISIM_STRATEGY_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "lrisim/random.hpp"

namespace lrisim {

// Slot-selection policy of one device: one PDF over the K slots for each
// transmission attempt 1..beta. Attempts and slots are 1-based at the API,
// matching the action encoding used in frame records (0 = no transmission).
class StrategyMatrix {
 public:
  StrategyMatrix() = default;
  // Uniform rows.
  StrategyMatrix(int attempts, int slots);

  int attempts() const { return attempts_; }
  int slots() const { return slots_; }

  std::span<const double> row(int attempt) const;
  std::span<double> row(int attempt);
  double at(int attempt, int slot) const { return row(attempt)[slot - 1]; }

  // Throws std::invalid_argument unless `pdf` has K entries in [0,1] summing
  // to 1 within 1e-12.
  void set_row(int attempt, std::span<const double> pdf);

  // Non-learning matrices are left untouched by the engine's update step.
  bool learning() const { return learning_; }
  void set_learning(bool on) { learning_ = on; }

  friend bool operator==(const StrategyMatrix&, const StrategyMatrix&) = default;

 private:
  void check_attempt(int attempt) const;

  int attempts_ = 0;
  int slots_ = 0;
  bool learning_ = true;
  std::vector<double> p_;
};

struct LearningParams {
  double alpha = 0.01;
  double purity_epsilon = 0.01;
};

StrategyMatrix init_uniform(int k, int beta);

// Inverse-CDF draw from row `attempt`; returns a slot in 1..K. Throws
// std::out_of_range for an attempt outside 1..beta.
int sample_slot(const StrategyMatrix& strategy, int attempt, Rng& rng);

// Linear reward-inaction step on row `attempt`. On reward the chosen slot moves
// toward 1 by a fraction alpha of its distance and every other slot shrinks by
// the factor (1 - alpha); the row is then renormalized by its sum. No reward,
// no change.
void lri_update(StrategyMatrix& strategy, int attempt, int chosen_slot,
                bool reward, double alpha);

bool is_pure(const StrategyMatrix& strategy, double purity_epsilon);

// Per-attempt argmax, lowest slot on ties.
std::vector<int> pure_assignment(const StrategyMatrix& strategy);

// One row per (device, attempt): [round,]device_id,attempt,p_1..p_K.
void write_strategies_csv(std::ostream& os,
                          std::span<const StrategyMatrix> strategies,
                          bool header = true, long long round = -1);

}  // namespace lrisim

#endif  // LRISIM_STRATEGY_HPP_
