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

#ifndef SLICEORCH_JSON_IO_HPP
#define SLICEORCH_JSON_IO_HPP

#include <json.hpp>

#include "sliceorch/scenario.hpp"
#include "sliceorch/slice_model.hpp"
#include "sliceorch/state.hpp"

// JSON mappings shared by the scenario serializer, run outputs and the HTTP API.
namespace sliceorch {

nlohmann::json to_json(const SliceIntent& intent);
nlohmann::json to_json(const DcPool& pool);
nlohmann::json to_json(const Topology& topology);
nlohmann::json to_json(const CellConfig& cell);
nlohmann::json to_json(const NfProfile& profile);
nlohmann::json to_json(const Placement& placement);
nlohmann::json to_json(const SliceState& state);
nlohmann::json to_json(const SimEvent& event);
nlohmann::json to_json(const Scenario& scenario);
nlohmann::json to_json(const MetricsFrame& frame);
nlohmann::json to_json(const ReconcileRecord& record);

Placement placement_from_json(const nlohmann::json& node, const std::string& path = "placement");
ReconcileRecord record_from_json(const nlohmann::json& node, const std::string& path = "record");

/// Parses an intent object; `path` prefixes error messages.
SliceIntent intent_from_json(const nlohmann::json& node, const std::string& path = "intent");

/// Builds a scenario from a parsed document tree, validating the schema.
Scenario scenario_from_json(const nlohmann::json& root);

}  // namespace sliceorch

#endif  // SLICEORCH_JSON_IO_HPP
