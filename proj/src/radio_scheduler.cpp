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

#include "sliceorch/radio_scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace sliceorch {

namespace {

// Guards ceil() against representation noise such as 28.000000000000004.
constexpr double kCeilSlack = 1e-9;

double ceil_units(double x) { return std::ceil(x - kCeilSlack); }

}  // namespace

int min_prbs(double tp_min_mbps, const CellConfig& cell) {
  if (!(tp_min_mbps >= 0.0)) throw InvariantError("min_prbs: tp_min must be nonnegative");
  if (tp_min_mbps > cell.cell_max_mbps)
    throw SlaUnsatisfiable(fmt::format("tp_min {} Mbps exceeds the cell maximum of {} Mbps",
                                       tp_min_mbps, cell.cell_max_mbps));
  const auto raw = static_cast<int>(ceil_units(tp_min_mbps / cell.mbps_per_prb()));
  const int q = std::max(cell.prb_quantum, 1);
  return (raw + q - 1) / q * q;
}

double prb_cap(double tp_max_mbps, const CellConfig& cell) {
  return std::min<double>(cell.prb_budget, ceil_units(tp_max_mbps / cell.mbps_per_prb()));
}

double prb_throughput(double granted_prbs, const CellConfig& cell) {
  return granted_prbs * cell.mbps_per_prb();
}

double PrbAllocation::total_granted() const noexcept {
  double s = 0.0;
  for (const auto& g : grants) s += g.granted;
  return s;
}

std::vector<double> max_min_fill(std::span<const double> floors, std::span<const double> caps,
                                 double budget) {
  const std::size_t n = floors.size();
  std::vector<double> lo(floors.begin(), floors.end());
  std::vector<double> hi(n);
  for (std::size_t i = 0; i < n; ++i) hi[i] = std::max(caps[i], lo[i]);

  const double floor_sum = std::accumulate(lo.begin(), lo.end(), 0.0);
  const double cap_sum = std::accumulate(hi.begin(), hi.end(), 0.0);
  if (n == 0) return {};
  if (cap_sum <= budget) return hi;

  // Filled amount at water level L is sum clamp(L, lo_i, hi_i): piecewise linear
  // and increasing, with kinks at every lo_i and hi_i. Walk the kinks in order.
  std::vector<double> kinks;
  kinks.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    kinks.push_back(lo[i]);
    kinks.push_back(hi[i]);
  }
  std::sort(kinks.begin(), kinks.end());
  auto filled = [&](double level) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::clamp(level, lo[i], hi[i]);
    return s;
  };

  double level = kinks.front();
  double prev_level = kinks.front();
  double prev_fill = floor_sum;
  for (double k : kinks) {
    const double f = filled(k);
    if (f >= budget) {
      // linear between prev_level and k: count entries strictly rising there
      std::size_t rising = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (lo[i] <= prev_level && hi[i] >= k && hi[i] > lo[i]) ++rising;
      level = rising ? prev_level + (budget - prev_fill) / static_cast<double>(rising) : k;
      level = std::clamp(level, prev_level, k);
      break;
    }
    prev_level = k;
    prev_fill = f;
    level = k;
  }

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::clamp(level, lo[i], hi[i]);
  return out;
}

PrbAllocation waterfill(std::span<const PrbRequest> requests, double budget) {
  std::vector<double> floors, caps;
  floors.reserve(requests.size());
  caps.reserve(requests.size());
  for (const auto& r : requests) {
    floors.push_back(r.floor);
    caps.push_back(r.cap);
  }
  const double floor_sum = std::accumulate(floors.begin(), floors.end(), 0.0);
  if (floor_sum > budget + kCeilSlack)
    throw AdmissionOverflow(fmt::format("PRB floors ({}) exceed the budget of {}", floor_sum, budget));
  auto granted = max_min_fill(floors, caps, budget);
  PrbAllocation alloc;
  alloc.grants.reserve(requests.size());
  for (std::size_t i = 0; i < requests.size(); ++i)
    alloc.grants.push_back({floors[i], granted[i], std::max(caps[i], floors[i])});
  return alloc;
}

}  // namespace sliceorch
