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

#ifndef SLICEORCH_COMPUTE_MODEL_HPP
#define SLICEORCH_COMPUTE_MODEL_HPP

#include <span>
#include <vector>

#include "sliceorch/slice_model.hpp"

namespace sliceorch {

/// Piecewise-linear CPU quota <-> throughput relation of one data-plane NF,
/// passing through every measured profile point and extrapolating with the
/// last segment's slope.
class CpuThroughputCurve {
 public:
  struct Breakpoint {
    double cpu_ms;
    double mbps;
    bool operator==(const Breakpoint&) const = default;
  };

  CpuThroughputCurve() = default;
  /// Breakpoints must be nondecreasing in both coordinates with at least two
  /// points and a rising last segment. Throws InvariantError.
  CpuThroughputCurve(NfType nf_type, std::vector<Breakpoint> breakpoints);

  static CpuThroughputCurve from_profile(const NfProfile& profile);

  NfType nf_type() const noexcept { return nf_type_; }
  std::span<const Breakpoint> breakpoints() const noexcept { return breakpoints_; }
  /// Mbps per CPU-ms beyond the last breakpoint.
  double tail_slope() const noexcept { return tail_slope_; }

  double throughput_for_cpu(double cpu_ms) const;
  /// Smallest quota achieving `mbps`.
  double cpu_for_throughput(double mbps) const;

  bool operator==(const CpuThroughputCurve&) const = default;

 private:
  NfType nf_type_ = NfType::CuUp;
  std::vector<Breakpoint> breakpoints_;
  double tail_slope_ = 0.0;
};

double throughput_for_cpu(const CpuThroughputCurve& curve, double cpu_ms);
double cpu_for_throughput(const CpuThroughputCurve& curve, double mbps);

/// Per-slice data-plane resource model (one CU-UP and one UPF instance).
struct DataPlaneModel {
  CpuThroughputCurve cuup;
  CpuThroughputCurve upf;
  double cuup_ram_gb = 0.0;
  double upf_ram_gb = 0.0;

  static DataPlaneModel from_profiles(const NfProfileSet& profiles);

  const CpuThroughputCurve& curve(NfType type) const;
};

/// CPU quotas each data-plane NF needs to carry `tp_mbps`.
CpuQuota slice_cpu_demand(const DataPlaneModel& model, double tp_mbps);

/// A stretch of constant achieved throughput.
struct ThroughputSegment {
  double seconds = 0.0;
  double mbps = 0.0;
};

/// Gigabytes carried by a throughput timeline (1 GB = 8000 Mbit).
double transferred_gb(std::span<const ThroughputSegment> timeline);

/// One reserved NF instance and the rates of the pool hosting it.
struct NfCharge {
  double cpu_quota_ms = 0.0;
  double ram_gb = 0.0;
  CostRates rates;
};

double hourly_reservation_cost(const NfCharge& nf);

/// Pay-as-you-go cost: reservations over `duration_h` plus bandwidth at
/// `bw_rate` per GB of the achieved-throughput timeline.
double accrue_cost(std::span<const NfCharge> nfs, double bw_rate,
                   std::span<const ThroughputSegment> timeline, double duration_h);

/// Same, for a slice placement. Bandwidth is billed once, at the UPF's pool.
double accrue_cost(const Placement& placement, const Topology& topology,
                   std::span<const ThroughputSegment> timeline, double duration_h);

}  // namespace sliceorch

#endif  // SLICEORCH_COMPUTE_MODEL_HPP
