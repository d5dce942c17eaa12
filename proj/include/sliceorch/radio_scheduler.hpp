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

#ifndef SLICEORCH_RADIO_SCHEDULER_HPP
#define SLICEORCH_RADIO_SCHEDULER_HPP

#include <span>
#include <vector>

#include "sliceorch/slice_model.hpp"

namespace sliceorch {

/// Guaranteed PRBs for a throughput floor: ceil(tp_min / mbps_per_prb) rounded
/// up to the grant quantum. Throws SlaUnsatisfiable when tp_min exceeds the cell.
int min_prbs(double tp_min_mbps, const CellConfig& cell);

/// Ceiling on useful PRBs for a slice: enough to carry tp_max, at most the budget.
double prb_cap(double tp_max_mbps, const CellConfig& cell);

double prb_throughput(double granted_prbs, const CellConfig& cell);

struct PrbRequest {
  double floor = 0.0;
  double cap = 0.0;
};

struct PrbGrant {
  double floor = 0.0;
  double granted = 0.0;
  double cap = 0.0;

  bool operator==(const PrbGrant&) const = default;
};

struct PrbAllocation {
  std::vector<PrbGrant> grants;  // same order as the requests

  double total_granted() const noexcept;
  bool operator==(const PrbAllocation&) const = default;
};

/// Max-min fair split of `budget` with per-entry floors and caps: every entry
/// starts at its floor and the lowest levels rise together until the budget is
/// spent or every entry sits at its cap. Caps below a floor are lifted to it.
/// Precondition: sum of floors <= budget.
std::vector<double> max_min_fill(std::span<const double> floors, std::span<const double> caps,
                                 double budget);

/// PRB water-filling over the cell budget. Throws AdmissionOverflow if the
/// floors alone do not fit.
PrbAllocation waterfill(std::span<const PrbRequest> requests, double budget);

}  // namespace sliceorch

#endif  // SLICEORCH_RADIO_SCHEDULER_HPP
