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

#include "sliceorch/run_output.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "sliceorch/json_io.hpp"

namespace sliceorch {

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw Error(fmt::format("write failed for {}", path.string()));
}

}  // namespace

RunSummary summarize(const Scenario& scenario, const RunResult& result) {
  RunSummary s;
  s.scenario = scenario.name;
  s.frames = result.frames.size();
  if (!result.frames.empty()) s.total_cost = result.frames.back().cumulative_cost;

  std::map<SliceId, SliceIntent> intents;
  for (const auto& r : result.log) {
    if (r.action == ReconcileAction::Admit) intents[r.slice] = *r.intent;
    if (r.action == ReconcileAction::Reject) ++s.rejections;
  }

  std::map<SliceId, SliceSummary> acc;
  for (const auto& f : result.frames) {
    const SlaReport report = detect(f, intents);
    for (const auto& sla : report.slices) {
      const auto* m = f.find(sla.id);
      auto& a = acc[sla.id];
      a.id = sla.id;
      a.pool_cuup = m->pool_cuup;
      a.pool_upf = m->pool_upf;
      a.prb_floor = m->prb_floor;
      a.rtt_ms = m->rtt_ms;
      ++a.frames;
      a.mean_achieved_mbps += sla.achieved_mbps;
      a.mean_violation_pct += sla.tp_violation_pct;
      a.max_violation_pct = std::max(a.max_violation_pct, sla.tp_violation_pct);
      if (sla.violated()) {
        ++a.violated_frames;
        ++s.violations;
      }
    }
  }
  for (auto& [id, a] : acc) {
    a.mean_achieved_mbps /= static_cast<double>(a.frames);
    a.mean_violation_pct /= static_cast<double>(a.frames);
    s.slices.push_back(a);
  }
  return s;
}

nlohmann::json to_json(const RunSummary& summary) {
  nlohmann::json slices = nlohmann::json::array();
  for (const auto& a : summary.slices)
    slices.push_back({{"id", a.id.str()},
                      {"pool_cuup", a.pool_cuup},
                      {"pool_upf", a.pool_upf},
                      {"prb_floor", a.prb_floor},
                      {"frames", a.frames},
                      {"mean_achieved_mbps", a.mean_achieved_mbps},
                      {"mean_violation_pct", a.mean_violation_pct},
                      {"max_violation_pct", a.max_violation_pct},
                      {"violated_frames", a.violated_frames},
                      {"rtt_ms", a.rtt_ms}});
  return {{"scenario", summary.scenario},
          {"frames", summary.frames},
          {"violations", summary.violations},
          {"rejections", summary.rejections},
          {"total_cost", summary.total_cost},
          {"slices", slices}};
}

std::string frames_csv(const std::vector<MetricsFrame>& frames) {
  std::string out =
      "seq,t_ms,slice,pool_cuup,pool_upf,demand_mbps,achieved_mbps,rtt_ms,granted_prbs,prb_floor,"
      "cuup_quota_ms,cuup_limit_ms,cuup_used_ms,upf_quota_ms,upf_limit_ms,upf_used_ms,"
      "cumulative_cost\n";
  for (const auto& f : frames)
    for (const auto& m : f.slices)
      out += fmt::format(
          "{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},"
          "{:.6f}\n",
          f.seq, f.t_ms, m.id.str(), m.pool_cuup, m.pool_upf, m.demand_mbps, m.achieved_mbps,
          m.rtt_ms, m.granted_prbs, m.prb_floor, m.cuup.quota_ms, m.cuup.limit_ms, m.cuup.used_ms,
          m.upf.quota_ms, m.upf.limit_ms, m.upf.used_ms, f.cumulative_cost);
  return out;
}

std::string frames_jsonl(const std::vector<MetricsFrame>& frames) {
  std::string out;
  for (const auto& f : frames) out += to_json(f).dump() + "\n";
  return out;
}

std::string events_jsonl(const std::vector<ReconcileRecord>& log) {
  std::string out;
  for (const auto& r : log) out += to_json(r).dump() + "\n";
  return out;
}

std::vector<ReconcileRecord> parse_events_jsonl(const std::string& text) {
  std::vector<ReconcileRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ScenarioError(fmt::format("line {}", n), e.what());
    }
    out.push_back(record_from_json(j, fmt::format("line {}", n)));
  }
  return out;
}

RunSummary write_run_directory(const std::filesystem::path& dir, const Scenario& scenario,
                               const RunResult& result) {
  std::filesystem::create_directories(dir);
  const RunSummary summary = summarize(scenario, result);
  write_file(dir / "scenario.json", serialize(scenario));
  write_file(dir / "frames.csv", frames_csv(result.frames));
  write_file(dir / "frames.jsonl", frames_jsonl(result.frames));
  write_file(dir / "events.jsonl", events_jsonl(result.log));
  write_file(dir / "summary.json", to_json(summary).dump(2) + "\n");
  return summary;
}

}  // namespace sliceorch
