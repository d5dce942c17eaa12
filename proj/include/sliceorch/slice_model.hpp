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

#ifndef SLICEORCH_SLICE_MODEL_HPP
#define SLICEORCH_SLICE_MODEL_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sliceorch/errors.hpp"

namespace sliceorch {

/// S-NSSAI: slice/service type plus slice differentiator.
struct SliceId {
  int sst = 0;
  int sd = 0;

  auto operator<=>(const SliceId&) const = default;

  /// "sst-sd", e.g. "1-3".
  std::string str() const;
  /// Inverse of str(); throws InvariantError on malformed text.
  static SliceId parse(std::string_view text);
};

/// The operator's high-level intention for one slice.
struct SliceIntent {
  SliceId id;
  double delay_min_ms = 0.0;
  double delay_max_ms = 0.0;
  double tp_min_mbps = 0.0;
  double tp_max_mbps = 0.0;
  int priority = 1;  // higher is more important

  bool operator==(const SliceIntent&) const = default;

  /// Throws InvariantError naming the broken rule.
  void validate() const;
};

enum class Tier { Edge, Regional, Central };

std::string_view to_string(Tier tier);
Tier parse_tier(std::string_view text);

struct CostRates {
  double cpu_rate = 0.0;  // per 100 CPU-ms per hour
  double ram_rate = 0.0;  // per GB per hour
  double bw_rate = 0.0;   // per GB transferred

  bool operator==(const CostRates&) const = default;
};

struct DcPool {
  std::string id;
  Tier tier = Tier::Central;
  double cpu_capacity_ms = 0.0;  // CPU-ms per second of wall time
  double ram_capacity_gb = 0.0;
  CostRates rates;
  double fixed_overhead_cpu_ms = 0.0;  // workload-cluster baseline

  bool operator==(const DcPool&) const = default;
  void validate() const;
};

/// DC pools plus one-way delays between them and at both ends of the path.
class Topology {
 public:
  Topology() = default;
  Topology(std::vector<DcPool> pools,
           std::map<std::pair<std::string, std::string>, double> link_delay_ms,
           double radio_delay_ms, double core_delay_ms);

  const std::vector<DcPool>& pools() const noexcept { return pools_; }
  const DcPool& pool(std::string_view id) const;
  bool has_pool(std::string_view id) const noexcept;

  /// One-way delay; zero on the diagonal. Throws UnknownPool.
  double link_delay(std::string_view a, std::string_view b) const;
  /// Link table keyed by ordered (min id, max id) pairs.
  const std::map<std::pair<std::string, std::string>, double>& links() const noexcept {
    return links_;
  }

  double radio_delay_ms() const noexcept { return radio_delay_ms_; }
  double core_delay_ms() const noexcept { return core_delay_ms_; }

  /// The unique Edge pool; it hosts the DU.
  const DcPool& edge_pool() const;
  /// Where shared control-plane NFs run: the Central pool if any, else Edge.
  const DcPool& control_plane_pool() const;

  bool operator==(const Topology&) const = default;

  /// Checks every invariant; throws InvariantError.
  void validate() const;

 private:
  std::vector<DcPool> pools_;
  std::map<std::pair<std::string, std::string>, double> links_;
  double radio_delay_ms_ = 0.0;
  double core_delay_ms_ = 0.0;
};

struct CellConfig {
  int total_prbs = 0;
  int prb_budget = 0;  // schedulable PRBs for slice data
  double cell_max_mbps = 0.0;
  int prb_quantum = 5;

  double mbps_per_prb() const noexcept { return cell_max_mbps / prb_budget; }

  bool operator==(const CellConfig&) const = default;
  void validate() const;
};

enum class NfType { CuUp, Upf, CuCp, Du, Amf, Smf };

std::string_view to_string(NfType type);
NfType parse_nf_type(std::string_view text);
bool is_data_plane(NfType type) noexcept;

struct ProfilePoint {
  double throughput_mbps = 0.0;
  double cpu_ms = 0.0;
  double ram_mb = 0.0;

  bool operator==(const ProfilePoint&) const = default;
};

/// Measured resource usage of one NF type.
struct NfProfile {
  NfType nf_type = NfType::CuUp;
  std::vector<ProfilePoint> points;
  bool shared = false;

  /// RAM is flat in the measurements, so demand is the max over points.
  double ram_demand_mb() const noexcept;
  /// CPU held by a shared NF regardless of slice traffic.
  double baseline_cpu_ms() const noexcept;

  bool operator==(const NfProfile&) const = default;
  void validate() const;
};

using NfProfileSet = std::map<NfType, NfProfile>;

/// CPU-ms left for per-slice data-plane NFs once the cluster baseline and
/// pinned shared NFs are paid for.
double dataplane_budget_ms(const DcPool& pool, const Topology& topology,
                           const NfProfileSet& profiles);

struct CpuQuota {
  double cuup_ms = 0.0;
  double upf_ms = 0.0;

  double total() const noexcept { return cuup_ms + upf_ms; }
  bool operator==(const CpuQuota&) const = default;
};

/// Low-level action for one slice: where its data plane runs and what it reserves.
struct Placement {
  SliceId slice;
  std::string pool_cuup;
  std::string pool_upf;
  CpuQuota cpu_quota;
  double ram_cuup_gb = 0.0;
  double ram_upf_gb = 0.0;
  int prb_floor = 0;
  double predicted_rtt_ms = 0.0;

  bool co_located() const noexcept { return pool_cuup == pool_upf; }
  bool operator==(const Placement&) const = default;
};

enum class Lifecycle { Preparation, Commissioning, Operation, Decommissioning, Terminated };

std::string_view to_string(Lifecycle lifecycle);

struct SliceState {
  SliceIntent intent;
  Lifecycle lifecycle = Lifecycle::Preparation;
  std::optional<Placement> placement;

  bool operator==(const SliceState&) const = default;
};

bool is_legal_transition(Lifecycle from, Lifecycle to) noexcept;

/// Moves `state` to `target` along the lifecycle chain. Entering Commissioning
/// requires `placement`; entering Terminated drops it. Throws IllegalTransition.
SliceState validate_transition(SliceState state, Lifecycle target,
                               std::optional<Placement> placement = std::nullopt);

}  // namespace sliceorch

#endif  // SLICEORCH_SLICE_MODEL_HPP
