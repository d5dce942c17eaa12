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

#include "sliceorch/scenario.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "sliceorch/json_io.hpp"

namespace sliceorch {

using nlohmann::json;

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::SliceStart: return "SliceStart";
    case EventKind::SliceStop: return "SliceStop";
    case EventKind::TrafficDemand: return "TrafficDemand";
    case EventKind::AssuranceToggle: return "AssuranceToggle";
  }
  return "?";
}

SimEvent SimEvent::start(std::int64_t t_ms, SliceIntent intent) {
  SimEvent e;
  e.t_ms = t_ms;
  e.kind = EventKind::SliceStart;
  e.slice = intent.id;
  e.intent = std::move(intent);
  return e;
}

SimEvent SimEvent::stop(std::int64_t t_ms, SliceId id) {
  SimEvent e;
  e.t_ms = t_ms;
  e.kind = EventKind::SliceStop;
  e.slice = id;
  return e;
}

SimEvent SimEvent::demand(std::int64_t t_ms, SliceId id, double mbps) {
  SimEvent e;
  e.t_ms = t_ms;
  e.kind = EventKind::TrafficDemand;
  e.slice = id;
  e.mbps = mbps;
  return e;
}

SimEvent SimEvent::toggle(std::int64_t t_ms, bool enabled) {
  SimEvent e;
  e.t_ms = t_ms;
  e.kind = EventKind::AssuranceToggle;
  e.enabled = enabled;
  return e;
}

void Scenario::validate() const {
  topology.validate();
  cell.validate();
  for (const auto& [type, prof] : profiles) prof.validate();
  for (auto required : {NfType::CuUp, NfType::Upf})
    if (!profiles.count(required))
      throw InvariantError(fmt::format("Scenario: missing {} profile", to_string(required)));
  for (const auto& pool : topology.pools()) {
    double shared = 0.0;
    for (const auto& [type, prof] : profiles) {
      if (!prof.shared) continue;
      const auto& host =
          type == NfType::Du ? topology.edge_pool() : topology.control_plane_pool();
      if (host.id == pool.id) shared += prof.baseline_cpu_ms();
    }
    if (pool.fixed_overhead_cpu_ms + shared > pool.cpu_capacity_ms)
      throw InvariantError(
          fmt::format("DcPool {}: overhead plus pinned shared NFs exceed cpu_capacity_ms", pool.id));
  }

  std::set<SliceId> active;
  std::int64_t last = 0;
  for (const auto& e : events) {
    if (e.t_ms < 0) throw InvariantError("SimEvent: timestamps must be nonnegative");
    if (e.t_ms < last) throw InvariantError("Scenario: events must be sorted by t_ms");
    last = e.t_ms;
    switch (e.kind) {
      case EventKind::SliceStart:
        e.intent.validate();
        if (!active.insert(e.intent.id).second)
          throw DuplicateSlice(
              fmt::format("duplicate S-NSSAI ({}, {})", e.intent.id.sst, e.intent.id.sd));
        break;
      case EventKind::SliceStop: active.erase(e.slice); break;
      case EventKind::TrafficDemand:
        if (e.mbps < 0) throw InvariantError("TrafficDemand: mbps must be nonnegative");
        break;
      case EventKind::AssuranceToggle: break;
    }
  }
}

namespace {

// yaml-cpp keeps every scalar as text; plain scalars are typed here the way a
// YAML 1.2 core-schema reader would, quoted ones stay strings.
json yaml_to_json(const YAML::Node& node, const std::string& path) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Sequence: {
      json arr = json::array();
      std::size_t i = 0;
      for (const auto& item : node) arr.push_back(yaml_to_json(item, fmt::format("{}[{}]", path, i++)));
      return arr;
    }
    case YAML::NodeType::Map: {
      json obj = json::object();
      for (const auto& kv : node) {
        auto key = kv.first.as<std::string>();
        if (obj.contains(key)) throw ScenarioError(path + "." + key, "duplicate key");
        obj[key] = yaml_to_json(kv.second, path + "." + key);
      }
      return obj;
    }
    case YAML::NodeType::Scalar: {
      const std::string& text = node.Scalar();
      if (node.Tag() == "!") return text;  // quoted
      if (text == "true" || text == "True" || text == "TRUE") return true;
      if (text == "false" || text == "False" || text == "FALSE") return false;
      if (text == "null" || text == "~" || text.empty()) return nullptr;
      const char* first = text.data();
      const char* last = text.data() + text.size();
      if (*first == '+') ++first;
      std::int64_t i = 0;
      if (auto [p, ec] = std::from_chars(first, last, i); ec == std::errc{} && p == last) return i;
      double d = 0.0;
      if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc{} && p == last) return d;
      return text;
    }
  }
  return nullptr;
}

}  // namespace

Scenario load_scenario(std::string_view document) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(document));
  } catch (const YAML::Exception& e) {
    throw ScenarioError("$", fmt::format("malformed document: {}", e.what()));
  }
  return scenario_from_json(yaml_to_json(root, "$"));
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("", fmt::format("cannot read scenario file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string serialize(const Scenario& scenario) { return to_json(scenario).dump(2) + "\n"; }

}  // namespace sliceorch
