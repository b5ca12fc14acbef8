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

#ifndef LRISIM_CONFIG_HPP_
#define LRISIM_CONFIG_HPP_

// Scenario configuration. Files are flat `key = value` text; `#` starts a
// comment, blank lines are ignored, keys are case-sensitive and may appear
// once. See README.md for the full key list.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lrisim {

enum class Scheme { kLri, kSaloha, kMmpc };
enum class BufferPolicy { kDropNew, kDropOldRestart };

std::string_view to_string(Scheme scheme);
std::string_view to_string(BufferPolicy policy);

struct SimConfig {
  // Required keys.
  int n_devices = 20;
  int k_slots = 4;
  int beta = 5;
  double alpha = 0.01;
  double lambda = 0.05;
  double mu = 0.0;
  double side = 10.0;
  double radius = 1.25;
  Scheme scheme = Scheme::kLri;
  BufferPolicy buffer_policy = BufferPolicy::kDropOldRestart;
  // Learning-phase length in frames; used when mu > 0.
  std::int64_t frames = 200000;
  int replications = 100;
  std::uint64_t base_seed = 1;

  // Optional keys.
  // Learning-phase length in episodes; used when mu == 0.
  std::int64_t episodes = 5000;
  // Evaluation phase with frozen strategies. Zero means metrics come from the
  // learning phase itself.
  std::int64_t eval_frames = 200000;
  std::int64_t eval_episodes = 5000;
  bool learning_frozen_after_purity = true;
  double purity_epsilon = 0.01;
  // Active frames observed before building the MMPC-style assignment.
  std::int64_t warmup_active_frames = 10000;
  // Number of learning-curve checkpoints (0 disables gain tracking) and the
  // evaluation length of each checkpoint.
  int gain_checkpoints = 0;
  std::int64_t curve_eval_rounds = 2000;
  // Trailing window of the windowed-throughput series in `trace` output.
  std::int64_t window = 1000;
  // Strategy snapshot period in learning rounds; 0 keeps only the final one.
  std::int64_t snapshot_every = 0;
  // When set (mu > 0 only), `frames` and `eval_frames` count expected active
  // frames and are divided by 1 - e^-mu, so every point of a mu sweep learns
  // from the same amount of traffic.
  bool scale_frames_to_activity = false;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;

  bool episodic() const { return mu == 0.0; }
  std::int64_t learning_rounds() const {
    return episodic() ? episodes : scaled(frames);
  }
  std::int64_t eval_rounds() const {
    return episodic() ? eval_episodes : scaled(eval_frames);
  }

 private:
  std::int64_t scaled(std::int64_t f) const {
    if (!scale_frames_to_activity) return f;
    return std::llround(static_cast<double>(f) / -std::expm1(-mu));
  }
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Every constraint violation of `config`, empty when valid.
std::vector<std::string> validate(const SimConfig& config);

// Parses and validates; all problems are reported together in one ConfigError.
SimConfig parse_config(std::string_view text,
                       const std::vector<std::string>& overrides = {});
SimConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides = {});

// Applies a single `key=value` override to an already valid config and
// revalidates.
void set_parameter(SimConfig& config, std::string_view key,
                   std::string_view value);

// Canonical key = value text; parse_config(to_config_text(c)) == c.
std::string to_config_text(const SimConfig& config);
std::string to_json(const SimConfig& config);

}  // namespace lrisim

#endif  // LRISIM_CONFIG_HPP_
