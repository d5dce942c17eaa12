// Copyright 2026 The sliceorch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLICEORCH_RUN_OUTPUT_HPP
#define SLICEORCH_RUN_OUTPUT_HPP

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sliceorch/sim_engine.hpp"

namespace sliceorch {

struct SliceSummary {
  SliceId id;
  std::string pool_cuup;
  std::string pool_upf;
  int prb_floor = 0;
  std::size_t frames = 0;
  double mean_achieved_mbps = 0.0;
  double mean_violation_pct = 0.0;
  double max_violation_pct = 0.0;
  std::size_t violated_frames = 0;
  double rtt_ms = 0.0;
};

struct RunSummary {
  std::string scenario;
  std::size_t frames = 0;
  std::vector<SliceSummary> slices;  // ordered by slice id
  std::size_t violations = 0;        // (slice, frame) pairs out of SLA
  std::size_t rejections = 0;
  double total_cost = 0.0;
};

RunSummary summarize(const Scenario& scenario, const RunResult& result);

nlohmann::json to_json(const RunSummary& summary);

/// One row per slice per frame, fixed six-decimal formatting.
std::string frames_csv(const std::vector<MetricsFrame>& frames);
std::string frames_jsonl(const std::vector<MetricsFrame>& frames);
std::string events_jsonl(const std::vector<ReconcileRecord>& log);
std::vector<ReconcileRecord> parse_events_jsonl(const std::string& text);

/// Writes scenario.json, frames.csv, frames.jsonl, events.jsonl and
/// summary.json into `dir`, creating it if needed.
RunSummary write_run_directory(const std::filesystem::path& dir, const Scenario& scenario,
                               const RunResult& result);

}  // namespace sliceorch

#endif  // SLICEORCH_RUN_OUTPUT_HPP
