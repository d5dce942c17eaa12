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

#ifndef SLICEORCH_SCENARIO_HPP
#define SLICEORCH_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sliceorch/slice_model.hpp"

namespace sliceorch {

enum class EventKind { SliceStart, SliceStop, TrafficDemand, AssuranceToggle };

std::string_view to_string(EventKind kind);

/// Timed input to the simulator. Only the fields relevant to `kind` are meaningful.
struct SimEvent {
  std::int64_t t_ms = 0;
  EventKind kind = EventKind::SliceStart;
  SliceIntent intent;  // SliceStart
  SliceId slice;       // SliceStop, TrafficDemand (and intent.id for SliceStart)
  double mbps = 0.0;   // TrafficDemand
  bool enabled = true; // AssuranceToggle

  static SimEvent start(std::int64_t t_ms, SliceIntent intent);
  static SimEvent stop(std::int64_t t_ms, SliceId id);
  static SimEvent demand(std::int64_t t_ms, SliceId id, double mbps);
  static SimEvent toggle(std::int64_t t_ms, bool enabled);

  bool operator==(const SimEvent&) const = default;
};

struct SimSettings {
  std::int64_t tick_ms = 1000;
  std::int64_t control_period_ms = 1000;
  std::int64_t horizon_ms = 0;  // frames are sampled on [0, horizon)
  bool assurance = true;

  bool operator==(const SimSettings&) const = default;
};

struct Scenario {
  std::string name;
  SimSettings settings;
  Topology topology;
  CellConfig cell;
  NfProfileSet profiles;
  std::vector<SimEvent> events;  // sorted by t_ms, stable

  bool operator==(const Scenario&) const = default;

  /// Type invariants, profile completeness, pool budgets and S-NSSAI uniqueness
  /// along the event timeline.
  void validate() const;
};

/// Parses a scenario document (YAML key/value + lists, or its canonical JSON form).
/// Throws ScenarioError for schema problems, InvariantError or DuplicateSlice otherwise.
Scenario load_scenario(std::string_view document);
Scenario load_scenario_file(const std::filesystem::path& path);

/// Canonical JSON form; load_scenario(serialize(s)) == s.
std::string serialize(const Scenario& scenario);

}  // namespace sliceorch

#endif  // SLICEORCH_SCENARIO_HPP
