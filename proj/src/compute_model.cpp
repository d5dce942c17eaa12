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

#include "sliceorch/compute_model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace sliceorch {

CpuThroughputCurve::CpuThroughputCurve(NfType nf_type, std::vector<Breakpoint> breakpoints)
    : nf_type_(nf_type), breakpoints_(std::move(breakpoints)) {
  const auto who = fmt::format("CpuThroughputCurve {}", to_string(nf_type_));
  if (breakpoints_.size() < 2) throw InvariantError(who + ": at least two breakpoints required");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const auto& b = breakpoints_[i];
    if (!(std::isfinite(b.cpu_ms) && std::isfinite(b.mbps)) || b.cpu_ms < 0 || b.mbps < 0)
      throw InvariantError(who + ": breakpoints must be finite and nonnegative");
    if (i > 0 && (b.cpu_ms < breakpoints_[i - 1].cpu_ms || !(b.mbps > breakpoints_[i - 1].mbps)))
      throw InvariantError(who + ": breakpoints must rise in throughput and not fall in CPU");
  }
  const auto& a = breakpoints_[breakpoints_.size() - 2];
  const auto& b = breakpoints_.back();
  if (!(b.cpu_ms > a.cpu_ms))
    throw InvariantError(who + ": last segment must consume CPU to extrapolate");
  tail_slope_ = (b.mbps - a.mbps) / (b.cpu_ms - a.cpu_ms);
}

CpuThroughputCurve CpuThroughputCurve::from_profile(const NfProfile& profile) {
  std::vector<Breakpoint> pts;
  pts.reserve(profile.points.size());
  for (const auto& p : profile.points) pts.push_back({p.cpu_ms, p.throughput_mbps});
  return CpuThroughputCurve(profile.nf_type, std::move(pts));
}

double CpuThroughputCurve::throughput_for_cpu(double cpu_ms) const {
  cpu_ms = std::max(cpu_ms, 0.0);
  const auto& bp = breakpoints_;
  const auto& first = bp.front();
  if (cpu_ms < first.cpu_ms) return first.mbps > 0.0 ? first.mbps * (cpu_ms / first.cpu_ms) : 0.0;
  if (cpu_ms >= bp.back().cpu_ms) return bp.back().mbps + tail_slope_ * (cpu_ms - bp.back().cpu_ms);
  // first breakpoint with cpu strictly above the quota; vertical steps resolve upward
  auto hi = std::upper_bound(bp.begin(), bp.end(), cpu_ms,
                             [](double c, const Breakpoint& b) { return c < b.cpu_ms; });
  auto lo = std::prev(hi);
  if (cpu_ms == lo->cpu_ms) return lo->mbps;
  const double frac = (cpu_ms - lo->cpu_ms) / (hi->cpu_ms - lo->cpu_ms);
  return lo->mbps + frac * (hi->mbps - lo->mbps);
}

double CpuThroughputCurve::cpu_for_throughput(double mbps) const {
  if (!(mbps > 0.0)) return 0.0;
  const auto& bp = breakpoints_;
  const auto& first = bp.front();
  if (mbps <= first.mbps) return first.cpu_ms * (mbps / first.mbps);
  if (mbps >= bp.back().mbps) return bp.back().cpu_ms + (mbps - bp.back().mbps) / tail_slope_;
  auto hi = std::lower_bound(bp.begin(), bp.end(), mbps,
                             [](const Breakpoint& b, double t) { return b.mbps < t; });
  if (hi->mbps == mbps) return hi->cpu_ms;
  auto lo = std::prev(hi);
  const double frac = (mbps - lo->mbps) / (hi->mbps - lo->mbps);
  return lo->cpu_ms + frac * (hi->cpu_ms - lo->cpu_ms);
}

double throughput_for_cpu(const CpuThroughputCurve& curve, double cpu_ms) {
  return curve.throughput_for_cpu(cpu_ms);
}

double cpu_for_throughput(const CpuThroughputCurve& curve, double mbps) {
  return curve.cpu_for_throughput(mbps);
}

DataPlaneModel DataPlaneModel::from_profiles(const NfProfileSet& profiles) {
  auto need = [&](NfType t) -> const NfProfile& {
    auto it = profiles.find(t);
    if (it == profiles.end())
      throw InvariantError(fmt::format("missing {} profile", to_string(t)));
    return it->second;
  };
  const auto& cuup = need(NfType::CuUp);
  const auto& upf = need(NfType::Upf);
  DataPlaneModel m;
  m.cuup = CpuThroughputCurve::from_profile(cuup);
  m.upf = CpuThroughputCurve::from_profile(upf);
  m.cuup_ram_gb = cuup.ram_demand_mb() / 1000.0;
  m.upf_ram_gb = upf.ram_demand_mb() / 1000.0;
  return m;
}

const CpuThroughputCurve& DataPlaneModel::curve(NfType type) const {
  if (type == NfType::CuUp) return cuup;
  if (type == NfType::Upf) return upf;
  throw InvariantError(fmt::format("{} is not a data-plane NF", to_string(type)));
}

CpuQuota slice_cpu_demand(const DataPlaneModel& model, double tp_mbps) {
  return {model.cuup.cpu_for_throughput(tp_mbps), model.upf.cpu_for_throughput(tp_mbps)};
}

double transferred_gb(std::span<const ThroughputSegment> timeline) {
  double megabits = 0.0;
  for (const auto& s : timeline) megabits += s.seconds * s.mbps;
  return megabits / 8.0 / 1000.0;
}

double hourly_reservation_cost(const NfCharge& nf) {
  return nf.cpu_quota_ms / 100.0 * nf.rates.cpu_rate + nf.ram_gb * nf.rates.ram_rate;
}

double accrue_cost(std::span<const NfCharge> nfs, double bw_rate,
                   std::span<const ThroughputSegment> timeline, double duration_h) {
  if (!(duration_h > 0.0)) throw InvariantError("accrue_cost: duration_h must be positive");
  double hourly = 0.0;
  for (const auto& nf : nfs) hourly += hourly_reservation_cost(nf);
  return hourly * duration_h + bw_rate * transferred_gb(timeline);
}

double accrue_cost(const Placement& placement, const Topology& topology,
                   std::span<const ThroughputSegment> timeline, double duration_h) {
  const auto& cuup_pool = topology.pool(placement.pool_cuup);
  const auto& upf_pool = topology.pool(placement.pool_upf);
  const NfCharge nfs[] = {
      {placement.cpu_quota.cuup_ms, placement.ram_cuup_gb, cuup_pool.rates},
      {placement.cpu_quota.upf_ms, placement.ram_upf_gb, upf_pool.rates},
  };
  return accrue_cost(nfs, upf_pool.rates.bw_rate, timeline, duration_h);
}

}  // namespace sliceorch
