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

#include "sliceorch/placement.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "sliceorch/radio_scheduler.hpp"

namespace sliceorch {

namespace {

constexpr double kHoursPerDay = 24.0;
constexpr double kCapacitySlack = 1e-9;

bool fits(const ResidualCapacity& residual, const std::string& pool, double cpu_ms, double ram_gb) {
  auto it = residual.find(pool);
  if (it == residual.end()) return false;
  return it->second.cpu_ms + kCapacitySlack >= cpu_ms && it->second.ram_gb + kCapacitySlack >= ram_gb;
}

}  // namespace

double rtt(std::string_view pool_cuup, std::string_view pool_upf, const Topology& topology) {
  const auto& du = topology.edge_pool();
  const double one_way = topology.radio_delay_ms() + topology.link_delay(du.id, pool_cuup) +
                         topology.link_delay(pool_cuup, pool_upf) + topology.core_delay_ms();
  return 2.0 * one_way;
}

ResidualCapacity nominal_capacity(const Topology& topology) {
  ResidualCapacity out;
  for (const auto& p : topology.pools()) out.emplace(p.id, PoolResidual{p.cpu_capacity_ms, p.ram_capacity_gb});
  return out;
}

std::vector<PoolPair> feasible_placements(const SliceIntent& intent, const PlacementContext& ctx,
                                          const ResidualCapacity& residual) {
  const CpuQuota q = slice_cpu_demand(ctx.model, intent.tp_min_mbps);
  const double ram_cuup = ctx.model.cuup_ram_gb;
  const double ram_upf = ctx.model.upf_ram_gb;

  std::vector<std::string> ids;
  for (const auto& p : ctx.topology.pools()) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());

  std::vector<PoolPair> out;
  for (const auto& a : ids) {
    for (const auto& b : ids) {
      if (rtt(a, b, ctx.topology) > intent.delay_max_ms) continue;
      const bool ok = a == b ? fits(residual, a, q.total(), ram_cuup + ram_upf)
                             : fits(residual, a, q.cuup_ms, ram_cuup) &&
                                   fits(residual, b, q.upf_ms, ram_upf);
      if (ok) out.push_back({a, b});
    }
  }
  return out;
}

Placement make_placement(const SliceIntent& intent, const PoolPair& pair,
                         const PlacementContext& ctx) {
  Placement p;
  p.slice = intent.id;
  p.pool_cuup = pair.cuup;
  p.pool_upf = pair.upf;
  p.cpu_quota = slice_cpu_demand(ctx.model, intent.tp_min_mbps);
  p.ram_cuup_gb = ctx.model.cuup_ram_gb;
  p.ram_upf_gb = ctx.model.upf_ram_gb;
  p.prb_floor = min_prbs(intent.tp_min_mbps, ctx.cell);
  p.predicted_rtt_ms = rtt(pair.cuup, pair.upf, ctx.topology);
  return p;
}

double steady_daily_cost(const Placement& placement, const SliceIntent& intent,
                         const Topology& topology) {
  const ThroughputSegment day[] = {{kHoursPerDay * 3600.0, intent.tp_min_mbps}};
  return accrue_cost(placement, topology, day, kHoursPerDay);
}

bool costs_tie(double a, double b) noexcept {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= kCostTieTolerance * scale;
}

Placement place_slice(const SliceIntent& intent, const PlacementContext& ctx,
                      const ResidualCapacity& residual) {
  intent.validate();
  // SlaUnsatisfiable takes precedence over delay/capacity.
  const int floor = min_prbs(intent.tp_min_mbps, ctx.cell);

  const auto candidates = feasible_placements(intent, ctx, residual);
  if (candidates.empty())
    throw NoFeasiblePlacement(fmt::format(
        "slice {}: no pool pair meets delay_max {} ms with capacity for {} Mbps",
        intent.id.str(), intent.delay_max_ms, intent.tp_min_mbps));

  // Daily cost separates into a CU-UP term and a UPF term (which carries the
  // bandwidth bill), so price each NF per pool once.
  const CpuQuota q = slice_cpu_demand(ctx.model, intent.tp_min_mbps);
  const double day_gb = transferred_gb(std::vector<ThroughputSegment>{
      {kHoursPerDay * 3600.0, intent.tp_min_mbps}});
  std::map<std::string, double, std::less<>> cuup_cost, upf_cost;
  for (const auto& pool : ctx.topology.pools()) {
    cuup_cost[pool.id] =
        hourly_reservation_cost({q.cuup_ms, ctx.model.cuup_ram_gb, pool.rates}) * kHoursPerDay;
    upf_cost[pool.id] =
        hourly_reservation_cost({q.upf_ms, ctx.model.upf_ram_gb, pool.rates}) * kHoursPerDay +
        pool.rates.bw_rate * day_gb;
  }

  const PoolPair* best = nullptr;
  double best_cost = 0.0;
  for (const auto& pair : candidates) {
    const double cost = cuup_cost[pair.cuup] + upf_cost[pair.upf];
    bool better = false;
    if (!best) {
      better = true;
    } else if (!costs_tie(cost, best_cost)) {
      better = cost < best_cost;
    } else {
      const bool co = pair.cuup == pair.upf;
      const bool best_co = best->cuup == best->upf;
      better = co != best_co ? co : pair < *best;
    }
    if (better) {
      best = &pair;
      best_cost = cost;
    }
  }

  Placement p = make_placement(intent, *best, ctx);
  p.prb_floor = floor;
  return p;
}

}  // namespace sliceorch
