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

#ifndef SLICEORCH_STATE_HPP
#define SLICEORCH_STATE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sliceorch/slice_model.hpp"

namespace sliceorch {

/// PRB floor/cap pair the slicing xApp enforces for one slice.
struct PrbPolicy {
  int floor = 0;
  double cap = 0.0;

  bool operator==(const PrbPolicy&) const = default;
};

/// A slice that holds resources. `state.placement->cpu_quota` is the live quota.
struct ActiveSlice {
  SliceState state;

  const Placement& placement() const { return *state.placement; }
  Placement& placement() { return *state.placement; }
  const SliceIntent& intent() const noexcept { return state.intent; }

  bool operator==(const ActiveSlice&) const = default;
};

/// Applied state of the network, as driven by the reconciliation loop.
struct NetworkState {
  std::map<SliceId, ActiveSlice> slices;
  std::map<SliceId, PrbPolicy> policies;  // last issued
  bool assurance_enabled = true;

  bool operator==(const NetworkState&) const = default;
};

enum class ReconcileAction { Admit, Reject, Resize, Policy, Decommission };

/// Log name of an action; Resize and Policy are the O1 and A1 messages.
std::string_view to_string(ReconcileAction action);
ReconcileAction parse_reconcile_action(std::string_view text);

/// One entry of the orchestrator's event-sourced log.
struct ReconcileRecord {
  std::uint64_t sequence = 0;
  std::int64_t t_ms = 0;
  ReconcileAction action = ReconcileAction::Admit;
  SliceId slice;                       // unset for assurance switches
  std::optional<SliceIntent> intent;   // Admit, Reject
  std::optional<Placement> placement;  // Admit
  std::optional<CpuQuota> quota;       // Resize
  std::optional<PrbPolicy> policy;     // Policy on a slice
  std::optional<bool> assurance;       // Policy switching the control loop
  std::string reason;                  // Reject

  bool operator==(const ReconcileRecord&) const = default;
};

/// Folds a log into the state it describes.
NetworkState replay(const std::vector<ReconcileRecord>& log, bool assurance_enabled = true);

struct NfMetrics {
  double quota_ms = 0.0;  // reserved
  double limit_ms = 0.0;  // effective CPU available this tick
  double used_ms = 0.0;

  bool operator==(const NfMetrics&) const = default;
};

struct SliceMetrics {
  SliceId id;
  std::string pool_cuup;
  std::string pool_upf;
  double demand_mbps = 0.0;
  double achieved_mbps = 0.0;
  double rtt_ms = 0.0;
  double granted_prbs = 0.0;
  int prb_floor = 0;
  NfMetrics cuup;
  NfMetrics upf;

  bool operator==(const SliceMetrics&) const = default;
};

struct PoolMetrics {
  std::string id;
  double dataplane_budget_ms = 0.0;
  double quota_sum_ms = 0.0;
  double cpu_used_ms = 0.0;  // including baseline and pinned shared NFs
  double cpu_utilization_fraction = 0.0;

  bool operator==(const PoolMetrics&) const = default;
};

/// One sample of the network at `t_ms`.
struct MetricsFrame {
  std::uint64_t seq = 0;
  std::int64_t t_ms = 0;
  std::vector<SliceMetrics> slices;  // ordered by slice id
  std::vector<PoolMetrics> pools;    // ordered as in the topology
  double cumulative_cost = 0.0;
  bool assurance_enabled = true;

  const SliceMetrics* find(const SliceId& id) const;
  bool operator==(const MetricsFrame&) const = default;
};

}  // namespace sliceorch

#endif  // SLICEORCH_STATE_HPP
