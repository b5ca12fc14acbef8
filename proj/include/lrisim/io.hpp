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

#ifndef LRISIM_IO_HPP_
#define LRISIM_IO_HPP_

// Result files. Column orders are fixed; doubles are printed in shortest
// round-trip form so identical runs give byte-identical files.
//
//   metrics.csv     parameter,value,scheme,replication,metric,estimate
//   summary.csv     parameter,value,scheme,metric,mean,ci95,count
//   gain_curve.csv  parameter,value,scheme,round,throughput,gain

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "lrisim/experiment.hpp"

namespace lrisim {

// One experiment tagged with the swept parameter (empty for plain runs).
struct LabeledResult {
  std::string parameter;
  std::string value;
  const ExperimentResult* result = nullptr;
};

void write_metrics_csv(std::ostream& os, std::span<const LabeledResult> rows);
void write_summary_csv(std::ostream& os, std::span<const LabeledResult> rows);
void write_gain_curve_csv(std::ostream& os,
                          std::span<const LabeledResult> rows);

// Full result as JSON: config echo, aggregates and per-replication reports.
std::string to_json(const ExperimentResult& result);

// Writes `content`, gzip-compressed when `gzip` is set.
void write_file(const std::filesystem::path& path, std::string_view content,
                bool gzip = false);

}  // namespace lrisim

#endif  // LRISIM_IO_HPP_
