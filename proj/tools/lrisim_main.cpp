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

// Command-line front end.
//
//   lrisim run   --config FILE [--set k=v]... [--out DIR] [--seed N] [--jobs N]
//   lrisim sweep --config FILE --param NAME --values a,b,c [--schemes LRI,SALOHA]
//   lrisim trace --config FILE [--gzip]

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "lrisim/baselines.hpp"
#include "lrisim/config.hpp"
#include "lrisim/engine.hpp"
#include "lrisim/experiment.hpp"
#include "lrisim/io.hpp"
#include "lrisim/metrics.hpp"

namespace fs = std::filesystem;
using namespace lrisim;

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int jobs = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config_path, "scenario file (key = value)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", o.overrides, "override, key=value (repeatable)");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option_function<std::uint64_t>(
      "--seed",
      [&o](std::uint64_t s) {
        o.seed = s;
        o.seed_set = true;
      },
      "base seed (overrides base_seed)");
  cmd->add_option("--jobs", o.jobs, "worker threads (0 = OpenMP default)");
}

SimConfig load(const CommonOptions& o) {
  auto overrides = o.overrides;
  if (o.seed_set) overrides.push_back(fmt::format("base_seed={}", o.seed));
  return load_config(o.config_path, overrides);
}

std::string render(void (*writer)(std::ostream&, std::span<const LabeledResult>),
                   std::span<const LabeledResult> rows) {
  std::ostringstream os;
  writer(os, rows);
  return os.str();
}

void write_results(const fs::path& out, const SimConfig& config,
                   std::span<const LabeledResult> rows) {
  fs::create_directories(out);
  write_file(out / "config_echo.json", to_json(config) + "\n");
  write_file(out / "metrics.csv", render(write_metrics_csv, rows));
  write_file(out / "summary.csv", render(write_summary_csv, rows));
  bool any_curve = false;
  for (const auto& r : rows) any_curve |= !r.result->throughput_curve.empty();
  if (any_curve) {
    write_file(out / "gain_curve.csv", render(write_gain_curve_csv, rows));
  }
}

void print_summary(const LabeledResult& row) {
  const auto& r = *row.result;
  auto show = [](const std::optional<Summary>& s) {
    return s ? fmt::format("{:.4f} +/- {:.4f}", s->mean, s->ci95)
             : std::string("undefined");
  };
  std::string label = row.parameter.empty()
                           ? std::string()
                           : fmt::format("{}={} ", row.parameter, row.value);
  fmt::print("{}{:<7} T = {}  L = {}\n", label, to_string(r.config.scheme),
             show(r.throughput), show(r.delay));
}

int cmd_run(const CommonOptions& o) {
  const SimConfig config = load(o);
  const ExperimentResult result = run_experiment(config, o.jobs);
  const fs::path out = o.out_dir;
  const LabeledResult row{"", "", &result};
  write_results(out, config, {&row, 1});
  write_file(out / "result.json", to_json(result) + "\n");
  const auto& first = result.replications.front();
  std::ostringstream strategies;
  write_strategies_csv(strategies, first.strategies);
  write_file(out / "strategies.csv", strategies.str());
  if (!first.assignment.empty()) {
    std::ostringstream assignment;
    write_assignment_csv(assignment, first.assignment);
    write_file(out / "assignment.csv", assignment.str());
  }
  print_summary(row);
  return 0;
}

int cmd_sweep(const CommonOptions& o, const std::string& param,
              const std::vector<std::string>& values,
              const std::vector<std::string>& schemes) {
  const SimConfig base = load(o);
  std::vector<SimConfig> variants;
  if (schemes.empty()) {
    variants.push_back(base);
  } else {
    for (const auto& s : schemes) {
      SimConfig c = base;
      set_parameter(c, "scheme", s);
      variants.push_back(c);
    }
  }
  std::vector<ExperimentResult> results;
  std::vector<std::pair<std::string, std::size_t>> labels;
  for (std::size_t v = 0; v < values.size(); ++v) {
    for (const auto& variant : variants) {
      auto r = sweep(variant, param, std::span(&values[v], 1), o.jobs);
      results.push_back(std::move(r.front()));
      labels.emplace_back(values[v], results.size() - 1);
    }
  }
  std::vector<LabeledResult> rows;
  for (const auto& [value, idx] : labels) {
    rows.push_back({param, value, &results[idx]});
  }
  write_results(o.out_dir, base, rows);
  for (const auto& row : rows) print_summary(row);
  return 0;
}

int cmd_trace(const CommonOptions& o, bool gzip) {
  const SimConfig config = load(o);
  const std::uint64_t seed = config.base_seed;
  Arena arena = place_devices(config, seed);
  Simulation sim(config, arena, initial_strategies(config, arena, seed));
  Rng traffic = make_stream(seed, Stream::kLearnTraffic);
  Rng policy = make_stream(seed, Stream::kLearnPolicy);

  std::ostringstream trace, traffic_csv, snapshots;
  write_trace_header(trace);
  traffic_csv << "frame_index,active_flag,event_count";
  for (std::size_t n = 1; n <= arena.size(); ++n) traffic_csv << ",y_" << n;
  traffic_csv << '\n';
  std::vector<FrameRecord> frames;
  const auto observer = [&](const FrameRecord& r, const TrafficFrame& t) {
    write_trace_rows(trace, r);
    fmt::print(traffic_csv, "{},{},{}", r.frame_index, t.active ? 1 : 0,
               t.event_count);
    for (auto y : t.y) traffic_csv << ',' << static_cast<int>(y);
    traffic_csv << '\n';
    frames.push_back(r);
  };

  const std::int64_t horizon = config.learning_rounds();
  const std::int64_t step =
      config.snapshot_every > 0 ? config.snapshot_every : horizon;
  bool header = true;
  write_strategies_csv(snapshots, sim.strategies(), header, 0);
  header = false;
  for (std::int64_t done = 0; done < horizon;) {
    const std::int64_t chunk = std::min(step, horizon - done);
    sim.run(chunk, traffic, policy, true, observer);
    done += chunk;
    write_strategies_csv(snapshots, sim.strategies(), header, done);
  }

  const fs::path out = o.out_dir;
  fs::create_directories(out);
  write_file(out / (gzip ? "trace.csv.gz" : "trace.csv"), trace.str(), gzip);
  write_file(out / "traffic.csv", traffic_csv.str());
  write_file(out / "strategies.csv", snapshots.str());
  write_file(out / "config_echo.json", to_json(config) + "\n");

  std::ostringstream windows;
  windows << "frame,throughput\n";
  for (const auto& p : windowed_throughput(frames, config.window)) {
    fmt::print(windows, "{},{}\n", p.frame,
               p.throughput ? fmt::format("{}", *p.throughput) : "");
  }
  write_file(out / "windowed_throughput.csv", windows.str());

  const auto tally = tally_trace(frames);
  const auto t = system_throughput(tally);
  const auto l = packet_transmission_time(tally);
  fmt::print("{} frames, {} rounds, T = {}, L = {}\n", sim.frames(),
             sim.rounds(), t ? fmt::format("{:.4f}", *t) : "undefined",
             l ? fmt::format("{:.4f}", *l) : "undefined");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-access simulator with learning slot selection"};
  app.require_subcommand(1);

  CommonOptions run_opts, sweep_opts, trace_opts;
  auto* run = app.add_subcommand("run", "run replications of one scenario");
  add_common(run, run_opts);

  auto* sw = app.add_subcommand("sweep", "run one scenario per parameter value");
  add_common(sw, sweep_opts);
  std::string param;
  std::vector<std::string> values, schemes;
  sw->add_option("--param", param, "lambda, mu, alpha, beta, n_devices or k_slots")
      ->required();
  sw->add_option("--values", values, "comma-separated values")
      ->required()
      ->delimiter(',');
  sw->add_option("--schemes", schemes, "schemes to pair at each point")
      ->delimiter(',');

  auto* tr = app.add_subcommand("trace", "dump frame-level traces of one run");
  add_common(tr, trace_opts);
  bool gzip = false;
  tr->add_flag("--gzip", gzip, "compress trace.csv");

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (sw->parsed()) return cmd_sweep(sweep_opts, param, values, schemes);
    if (tr->parsed()) return cmd_trace(trace_opts, gzip);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
