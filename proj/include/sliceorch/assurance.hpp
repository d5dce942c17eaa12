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

#ifndef SLICEORCH_ASSURANCE_HPP
#define SLICEORCH_ASSURANCE_HPP

#include <map>
#include <span>
#include <vector>

#include "sliceorch/compute_model.hpp"
#include "sliceorch/state.hpp"

namespace sliceorch {

struct SliceSla {
  SliceId id;
  double achieved_mbps = 0.0;
  double rtt_ms = 0.0;
  double tp_violation_pct = 0.0;
  bool delay_violated = false;

  bool violated() const noexcept { return tp_violation_pct > 0.0 || delay_violated; }
};

struct SlaReport {
  std::vector<SliceSla> slices;

  bool any_violation() const noexcept;
  const SliceSla* find(const SliceId& id) const;
};

/// max(0, 1 - achieved / reference) * 100, zero when the reference is zero.
double tp_violation_pct(double achieved_mbps, double reference_mbps);

/// SLA check of one frame. The throughput reference is min(tp_min, offered
/// demand). Throws UnknownSlice for frame slices without an intent.
SlaReport detect(const MetricsFrame& metrics, const std::map<SliceId, SliceIntent>& intents);

/// One slice's stake in a single pool's CPU budget.
struct PoolSlice {
  SliceId id;
  double tp_min_mbps = 0.0;
  int priority = 1;
  bool has_cuup = true;  // CU-UP instance lives in this pool
  bool has_upf = true;   // UPF instance lives in this pool
};

/// CPU this slice draws from the pool at `mbps`.
double pool_cpu_at(const PoolSlice& slice, const DataPlaneModel& model, double mbps);

struct SliceTarget {
  double target_mbps = 0.0;
  CpuQuota quota;  // zero for NFs outside the pool
};

/// Redistributes an over-committed pool budget. If the budget covers every
/// tp_min, slices get their tp_min quotas. Otherwise throughput targets
/// minimise sum_i priority_i * (tp_min_i - x_i)^2 / tp_min_i under the budget,
/// with each top-priority slice kept at or above its fair-share throughput.
std::map<SliceId, SliceTarget> rebalance(std::span<const PoolSlice> slices,
                                         const DataPlaneModel& model, double budget_ms);

/// Unmanaged baseline: the budget split equally over every data-plane NF
/// instance in the pool.
std::map<SliceId, CpuQuota> fair_share_baseline(std::span<const PoolSlice> slices,
                                                double budget_ms);

struct AssuranceConfig {
  const Topology& topology;
  const DataPlaneModel& model;
  const CellConfig& cell;
  const NfProfileSet& profiles;
};

struct QuotaUpdate {
  SliceId id;
  CpuQuota quota;
};

struct PolicyUpdate {
  SliceId id;
  PrbPolicy policy;
};

struct AssuranceOutcome {
  std::vector<QuotaUpdate> quotas;       // O1 reconfigurations
  std::vector<PolicyUpdate> policies;    // A1 policies
  std::vector<SliceId> retired_policies; // policies of slices no longer active
  SlaReport report;

  bool no_updates() const noexcept {
    return quotas.empty() && policies.empty() && retired_policies.empty();
  }
};

/// Quotas the control loop wants for every active slice.
std::map<SliceId, CpuQuota> desired_quotas(const NetworkState& state, const AssuranceConfig& cfg);

/// One pass of the control loop: SLA report on `metrics` (if any), quota
/// updates where desired quotas differ from applied ones, and PRB policies
/// where the slice's floor or cap changed.
AssuranceOutcome assurance_tick(const NetworkState& state, const MetricsFrame* metrics,
                                const AssuranceConfig& cfg);

/// Applies the updates of `outcome` to `state`.
void apply_outcome(NetworkState& state, const AssuranceOutcome& outcome);

}  // namespace sliceorch

#endif  // SLICEORCH_ASSURANCE_HPP
