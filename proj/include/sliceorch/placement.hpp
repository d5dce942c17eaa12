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

#ifndef SLICEORCH_PLACEMENT_HPP
#define SLICEORCH_PLACEMENT_HPP

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sliceorch/compute_model.hpp"
#include "sliceorch/slice_model.hpp"

namespace sliceorch {

/// Round trip UE -> DU(Edge) -> CU-UP -> UPF -> data network and back.
double rtt(std::string_view pool_cuup, std::string_view pool_upf, const Topology& topology);

struct PoolResidual {
  double cpu_ms = 0.0;
  double ram_gb = 0.0;
};

/// Unreserved capacity per pool id.
using ResidualCapacity = std::map<std::string, PoolResidual, std::less<>>;

/// Full nominal capacity of every pool; admission reserves from it.
ResidualCapacity nominal_capacity(const Topology& topology);

struct PoolPair {
  std::string cuup;
  std::string upf;

  auto operator<=>(const PoolPair&) const = default;
};

/// Everything a placement decision reads besides the intent and residuals.
struct PlacementContext {
  const Topology& topology;
  const DataPlaneModel& model;
  const CellConfig& cell;
};

/// Pairs whose RTT fits delay_max and whose pools can hold the tp_min
/// reservation (a shared pool must hold both NFs). Ordered by (cuup, upf).
std::vector<PoolPair> feasible_placements(const SliceIntent& intent, const PlacementContext& ctx,
                                          const ResidualCapacity& residual);

/// Placement record for `pair` with quotas sized at tp_min.
Placement make_placement(const SliceIntent& intent, const PoolPair& pair,
                         const PlacementContext& ctx);

/// Pay-as-you-go cost of running the slice at steady tp_min for 24 h.
double steady_daily_cost(const Placement& placement, const SliceIntent& intent,
                         const Topology& topology);

/// Relative tolerance under which two costs count as a tie.
inline constexpr double kCostTieTolerance = 1e-9;
bool costs_tie(double a, double b) noexcept;

/// Cheapest feasible placement. Ties go to co-located pairs, then to the
/// lexicographically smallest (cuup, upf). Throws SlaUnsatisfiable when tp_min
/// exceeds the cell, NoFeasiblePlacement when no pair qualifies.
Placement place_slice(const SliceIntent& intent, const PlacementContext& ctx,
                      const ResidualCapacity& residual);

}  // namespace sliceorch

#endif  // SLICEORCH_PLACEMENT_HPP
