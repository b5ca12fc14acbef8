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

#include "lrisim/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>
#include <zlib.h>

namespace lrisim {

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "";
  return fmt::format("{}", v);
}

std::string number(const std::optional<double>& v) {
  return v ? number(*v) : std::string();
}

nlohmann::ordered_json summary_json(const std::optional<Summary>& s) {
  if (!s) return nullptr;
  return {{"mean", s->mean}, {"ci95", s->ci95}, {"count", s->count}};
}

nlohmann::ordered_json curve_json(const std::vector<CurvePoint>& curve) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : curve) {
    arr.push_back({p.round, std::isnan(p.value) ? nlohmann::ordered_json()
                                                : nlohmann::ordered_json(p.value)});
  }
  return arr;
}

}  // namespace

void write_metrics_csv(std::ostream& os, std::span<const LabeledResult> rows) {
  os << "parameter,value,scheme,replication,metric,estimate\n";
  for (const auto& row : rows) {
    const auto& res = *row.result;
    const auto scheme = to_string(res.config.scheme);
    for (const auto& rep : res.replications) {
      const auto& m = rep.report;
      auto line = [&](std::string_view metric, const std::string& value) {
        fmt::print(os, "{},{},{},{},{},{}\n", row.parameter, row.value, scheme,
                   rep.index, metric, value);
      };
      line("L", number(m.delay));
      line("T", number(m.throughput));
      line("excluded_devices", std::to_string(m.excluded_devices));
      line("rounds", std::to_string(m.rounds));
      line("pure", rep.pure ? "1" : "0");
      for (std::size_t n = 0; n < m.per_device_success_rate.size(); ++n) {
        line(fmt::format("u_{}", n + 1), number(m.per_device_success_rate[n]));
      }
    }
  }
}

void write_summary_csv(std::ostream& os, std::span<const LabeledResult> rows) {
  os << "parameter,value,scheme,metric,mean,ci95,count\n";
  for (const auto& row : rows) {
    const auto& res = *row.result;
    const auto scheme = to_string(res.config.scheme);
    auto line = [&](std::string_view metric, const std::optional<Summary>& s) {
      if (s) {
        fmt::print(os, "{},{},{},{},{},{},{}\n", row.parameter, row.value,
                   scheme, metric, number(s->mean), number(s->ci95), s->count);
      } else {
        fmt::print(os, "{},{},{},{},,,0\n", row.parameter, row.value, scheme,
                   metric);
      }
    };
    line("L", res.delay);
    line("T", res.throughput);
  }
}

void write_gain_curve_csv(std::ostream& os,
                          std::span<const LabeledResult> rows) {
  os << "parameter,value,scheme,round,throughput,gain\n";
  for (const auto& row : rows) {
    const auto& res = *row.result;
    const auto scheme = to_string(res.config.scheme);
    for (std::size_t j = 0; j < res.throughput_curve.size(); ++j) {
      const auto& p = res.throughput_curve[j];
      const std::string gain =
          j < res.gain_series.size() ? number(res.gain_series[j].value) : "";
      fmt::print(os, "{},{},{},{},{},{}\n", row.parameter, row.value, scheme,
                 p.round, number(p.value), gain);
    }
  }
}

std::string to_json(const ExperimentResult& result) {
  nlohmann::ordered_json j;
  j["config"] = nlohmann::ordered_json::parse(to_json(result.config));
  j["L"] = summary_json(result.delay);
  j["T"] = summary_json(result.throughput);
  j["throughput_curve"] = curve_json(result.throughput_curve);
  j["gain_series"] = curve_json(result.gain_series);
  auto reps = nlohmann::ordered_json::array();
  for (const auto& r : result.replications) {
    nlohmann::ordered_json rep;
    rep["replication"] = r.index;
    rep["seed"] = r.seed;
    rep["L"] = r.report.delay ? nlohmann::ordered_json(*r.report.delay) : nullptr;
    rep["T"] = r.report.throughput ? nlohmann::ordered_json(*r.report.throughput)
                                   : nullptr;
    rep["excluded_devices"] = r.report.excluded_devices;
    rep["rounds"] = r.report.rounds;
    rep["pure"] = r.pure;
    rep["per_device_success_rate"] = r.report.per_device_success_rate;
    rep["gain_series"] = curve_json(r.report.gain_series);
    if (!r.assignment.empty()) rep["assignment"] = r.assignment;
    reps.push_back(std::move(rep));
  }
  j["replications"] = std::move(reps);
  return j.dump(2);
}

void write_file(const std::filesystem::path& path, std::string_view content,
                bool gzip) {
  if (gzip) {
    // zlib writes a header without name or mtime, so output is reproducible.
    gzFile f = gzopen(path.string().c_str(), "wb9");
    if (!f) throw std::runtime_error("cannot open " + path.string());
    const int written =
        content.empty()
            ? 0
            : gzwrite(f, content.data(), static_cast<unsigned>(content.size()));
    gzclose(f);
    if (written != static_cast<int>(content.size())) {
      throw std::runtime_error("short write to " + path.string());
    }
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace lrisim
