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

#include "lrisim/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace lrisim {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kLri: return "LRI";
    case Scheme::kSaloha: return "SALOHA";
    case Scheme::kMmpc: return "MMPC";
  }
  return "?";
}

std::string_view to_string(BufferPolicy policy) {
  switch (policy) {
    case BufferPolicy::kDropNew: return "drop_new";
    case BufferPolicy::kDropOldRestart: return "drop_old_restart";
  }
  return "?";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) return std::nullopt;
  }
  return value;
}

std::optional<bool> parse_bool(std::string_view s) {
  const auto u = upper(s);
  if (u == "TRUE" || u == "1" || u == "YES") return true;
  if (u == "FALSE" || u == "0" || u == "NO") return false;
  return std::nullopt;
}

std::optional<Scheme> parse_scheme(std::string_view s) {
  const auto u = upper(s);
  if (u == "LRI") return Scheme::kLri;
  if (u == "SALOHA" || u == "S-ALOHA") return Scheme::kSaloha;
  if (u == "MMPC") return Scheme::kMmpc;
  return std::nullopt;
}

std::optional<BufferPolicy> parse_policy(std::string_view s) {
  const auto u = upper(s);
  if (u == "DROP_NEW") return BufferPolicy::kDropNew;
  if (u == "DROP_OLD_RESTART") return BufferPolicy::kDropOldRestart;
  return std::nullopt;
}

struct Field {
  bool required;
  // Returns false when the value does not parse.
  std::function<bool(SimConfig&, std::string_view)> set;
  std::function<std::string(const SimConfig&)> get;
};

template <typename T>
Field number_field(bool required, T SimConfig::*member) {
  return {required,
          [member](SimConfig& c, std::string_view v) {
            auto parsed = parse_number<T>(v);
            if (!parsed) return false;
            c.*member = *parsed;
            return true;
          },
          [member](const SimConfig& c) { return fmt::format("{}", c.*member); }};
}

Field bool_field(bool required, bool SimConfig::*member) {
  return {required,
          [member](SimConfig& c, std::string_view v) {
            auto parsed = parse_bool(v);
            if (!parsed) return false;
            c.*member = *parsed;
            return true;
          },
          [member](const SimConfig& c) {
            return std::string(c.*member ? "true" : "false");
          }};
}

// Ordered so to_config_text is stable.
const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"n_devices", number_field(true, &SimConfig::n_devices)},
      {"k_slots", number_field(true, &SimConfig::k_slots)},
      {"beta", number_field(true, &SimConfig::beta)},
      {"alpha", number_field(true, &SimConfig::alpha)},
      {"lambda", number_field(true, &SimConfig::lambda)},
      {"mu", number_field(true, &SimConfig::mu)},
      {"side", number_field(true, &SimConfig::side)},
      {"radius", number_field(true, &SimConfig::radius)},
      {"scheme",
       {true,
        [](SimConfig& c, std::string_view v) {
          auto s = parse_scheme(v);
          if (!s) return false;
          c.scheme = *s;
          return true;
        },
        [](const SimConfig& c) { return std::string(to_string(c.scheme)); }}},
      {"buffer_policy",
       {true,
        [](SimConfig& c, std::string_view v) {
          auto p = parse_policy(v);
          if (!p) return false;
          c.buffer_policy = *p;
          return true;
        },
        [](const SimConfig& c) {
          return std::string(to_string(c.buffer_policy));
        }}},
      {"frames", number_field(true, &SimConfig::frames)},
      {"replications", number_field(true, &SimConfig::replications)},
      {"base_seed", number_field(true, &SimConfig::base_seed)},
      {"episodes", number_field(false, &SimConfig::episodes)},
      {"eval_frames", number_field(false, &SimConfig::eval_frames)},
      {"eval_episodes", number_field(false, &SimConfig::eval_episodes)},
      {"learning_frozen_after_purity",
       bool_field(false, &SimConfig::learning_frozen_after_purity)},
      {"purity_epsilon", number_field(false, &SimConfig::purity_epsilon)},
      {"warmup_active_frames",
       number_field(false, &SimConfig::warmup_active_frames)},
      {"gain_checkpoints", number_field(false, &SimConfig::gain_checkpoints)},
      {"curve_eval_rounds", number_field(false, &SimConfig::curve_eval_rounds)},
      {"window", number_field(false, &SimConfig::window)},
      {"snapshot_every", number_field(false, &SimConfig::snapshot_every)},
      {"scale_frames_to_activity",
       bool_field(false, &SimConfig::scale_frames_to_activity)},
  };
  return table;
}

const Field* find_field(std::string_view key) {
  for (const auto& [name, field] : fields()) {
    if (name == key) return &field;
  }
  return nullptr;
}

void parse_assignment(std::string_view line, std::string& key,
                      std::string& value, std::vector<std::string>& problems,
                      std::string_view where) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) {
    problems.push_back(fmt::format("{}: expected key = value", where));
    return;
  }
  key = std::string(trim(line.substr(0, eq)));
  value = std::string(trim(line.substr(eq + 1)));
  if (key.empty()) problems.push_back(fmt::format("{}: empty key", where));
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

std::vector<std::string> validate(const SimConfig& c) {
  std::vector<std::string> p;
  if (c.n_devices < 1) p.push_back("n_devices must be >= 1");
  if (c.k_slots < 1) p.push_back("k_slots must be >= 1");
  if (c.beta < 1) p.push_back("beta must be >= 1");
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) p.push_back("alpha must lie in (0,1)");
  if (!(c.lambda >= 0.0)) p.push_back("lambda must be >= 0");
  if (!(c.mu >= 0.0)) p.push_back("mu must be >= 0");
  if (!(c.side > 0.0)) p.push_back("side must be > 0");
  if (!(c.radius > 0.0)) p.push_back("radius must be > 0");
  if (c.frames < 1) p.push_back("frames must be >= 1");
  if (c.replications < 1) p.push_back("replications must be >= 1");
  if (c.episodes < 1) p.push_back("episodes must be >= 1");
  if (c.eval_frames < 0) p.push_back("eval_frames must be >= 0");
  if (c.eval_episodes < 0) p.push_back("eval_episodes must be >= 0");
  if (!(c.purity_epsilon > 0.0 && c.purity_epsilon < 0.5)) {
    p.push_back("purity_epsilon must lie in (0,0.5)");
  }
  if (c.scheme == Scheme::kMmpc && c.beta != 1) {
    p.push_back(fmt::format(
        "scheme MMPC requires beta = 1 (no retransmissions), got beta = {}",
        c.beta));
  }
  if (c.scheme == Scheme::kMmpc && c.warmup_active_frames < 2) {
    p.push_back("warmup_active_frames must be >= 2 for MMPC");
  }
  if (c.gain_checkpoints < 0) p.push_back("gain_checkpoints must be >= 0");
  if (c.gain_checkpoints > 0 && c.curve_eval_rounds < 1) {
    p.push_back("curve_eval_rounds must be >= 1 when gain tracking is on");
  }
  if (c.window < 1) p.push_back("window must be >= 1");
  if (c.snapshot_every < 0) p.push_back("snapshot_every must be >= 0");
  return p;
}

SimConfig parse_config(std::string_view text,
                       const std::vector<std::string>& overrides) {
  SimConfig config;
  std::vector<std::string> problems;
  std::set<std::string> seen;

  auto assign = [&](const std::string& key, const std::string& value,
                    std::string_view where) {
    const Field* field = find_field(key);
    if (!field) {
      problems.push_back(fmt::format("{}: unknown key '{}'", where, key));
      return;
    }
    if (!field->set(config, value)) {
      problems.push_back(
          fmt::format("{}: bad value '{}' for '{}'", where, value, key));
      return;
    }
    seen.insert(key);
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  std::set<std::string> in_file;
  for (int line_no = 1; std::getline(in, raw); ++line_no) {
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto where = fmt::format("line {}", line_no);
    std::string key, value;
    parse_assignment(line, key, value, problems, where);
    if (key.empty()) continue;
    if (!in_file.insert(key).second) {
      problems.push_back(fmt::format("{}: duplicate key '{}'", where, key));
      continue;
    }
    assign(key, value, where);
  }
  for (const auto& o : overrides) {
    std::string key, value;
    parse_assignment(o, key, value, problems, fmt::format("--set {}", o));
    if (!key.empty()) assign(key, value, fmt::format("--set {}", o));
  }

  for (const auto& [name, field] : fields()) {
    if (field.required && !seen.count(name)) {
      problems.push_back(fmt::format("missing required key '{}'", name));
    }
  }
  if (problems.empty()) problems = validate(config);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

SimConfig load_config(const std::filesystem::path& path,
                      const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError({fmt::format("cannot read '{}'", path.string())});
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), overrides);
}

void set_parameter(SimConfig& config, std::string_view key,
                   std::string_view value) {
  const Field* field = find_field(key);
  if (!field) throw ConfigError({fmt::format("unknown key '{}'", key)});
  SimConfig next = config;
  if (!field->set(next, trim(value))) {
    throw ConfigError({fmt::format("bad value '{}' for '{}'", value, key)});
  }
  if (auto problems = validate(next); !problems.empty()) {
    throw ConfigError(std::move(problems));
  }
  config = next;
}

std::string to_config_text(const SimConfig& config) {
  std::string out;
  for (const auto& [name, field] : fields()) {
    out += fmt::format("{} = {}\n", name, field.get(config));
  }
  return out;
}

std::string to_json(const SimConfig& config) {
  nlohmann::ordered_json j;
  j["n_devices"] = config.n_devices;
  j["k_slots"] = config.k_slots;
  j["beta"] = config.beta;
  j["alpha"] = config.alpha;
  j["lambda"] = config.lambda;
  j["mu"] = config.mu;
  j["side"] = config.side;
  j["radius"] = config.radius;
  j["scheme"] = to_string(config.scheme);
  j["buffer_policy"] = to_string(config.buffer_policy);
  j["frames"] = config.frames;
  j["replications"] = config.replications;
  j["base_seed"] = config.base_seed;
  j["episodes"] = config.episodes;
  j["eval_frames"] = config.eval_frames;
  j["eval_episodes"] = config.eval_episodes;
  j["learning_frozen_after_purity"] = config.learning_frozen_after_purity;
  j["purity_epsilon"] = config.purity_epsilon;
  j["warmup_active_frames"] = config.warmup_active_frames;
  j["gain_checkpoints"] = config.gain_checkpoints;
  j["curve_eval_rounds"] = config.curve_eval_rounds;
  j["window"] = config.window;
  j["snapshot_every"] = config.snapshot_every;
  j["scale_frames_to_activity"] = config.scale_frames_to_activity;
  j["learning_rounds"] = config.learning_rounds();
  j["eval_rounds"] = config.eval_rounds();
  j["mode"] = config.episodic() ? "episodic" : "continuous";
  return j.dump(2);
}

}  // namespace lrisim
