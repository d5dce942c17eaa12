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

#include "sliceorch/assurance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "sliceorch/radio_scheduler.hpp"

namespace sliceorch {

namespace {

constexpr double kBudgetSlack = 1e-9;
constexpr int kBisectionSteps = 200;
constexpr double kMaxPinnings = 1 << 16;

// Throughput values where the slice's pool CPU curve bends.
std::vector<double> kinks_of(const PoolSlice& s, const DataPlaneModel& model) {
  std::vector<double> out;
  if (s.has_cuup)
    for (const auto& b : model.cuup.breakpoints()) out.push_back(b.mbps);
  if (s.has_upf)
    for (const auto& b : model.upf.breakpoints()) out.push_back(b.mbps);
  return out;
}

// Pieces of a slice's pool CPU curve between its lower bound and tp_min.
// On each piece the CPU cost is linear: cpu0 + slope * (x - a).
struct Piece {
  double a, b, cpu0, slope;
};

std::vector<Piece> pieces_of(const PoolSlice& s, const DataPlaneModel& model, double lower) {
  std::vector<double> grid{lower};
  for (double k : kinks_of(s, model))
    if (k > lower && k < s.tp_min_mbps) grid.push_back(k);
  grid.push_back(s.tp_min_mbps);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<Piece> out;
  if (grid.size() == 1) {
    const double c = pool_cpu_at(s, model, grid[0]);
    out.push_back({grid[0], grid[0], c, 0.0});
    return out;
  }
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double c0 = pool_cpu_at(s, model, grid[k]), c1 = pool_cpu_at(s, model, grid[k + 1]);
    out.push_back({grid[k], grid[k + 1], c0, (c1 - c0) / (grid[k + 1] - grid[k])});
  }
  return out;
}

// Convex subproblem with every slice pinned to one piece: a separable
// quadratic under one linear budget. Returns false when even the piece
// starts do not fit.
bool solve_pinned(std::span<const PoolSlice> slices, const std::vector<const Piece*>& pin,
                  double budget, std::vector<double>& x) {
  const std::size_t n = slices.size();
  x.assign(n, 0.0);
  auto at = [&](double mu) {
    double used = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Piece& q = *pin[i];
      const double t = slices[i].tp_min_mbps;
      x[i] = q.slope > 0.0 && t > 0.0
                 ? std::clamp(t - mu * q.slope * t / (2.0 * slices[i].priority), q.a, q.b)
                 : q.b;
      used += q.cpu0 + q.slope * (x[i] - q.a);
    }
    return used;
  };
  double floor_cpu = 0.0;
  for (const Piece* q : pin) floor_cpu += q->cpu0;
  if (floor_cpu > budget) return false;
  if (at(0.0) <= budget) return true;
  double lo = 0.0, hi = 1.0;
  for (int g = 0; g < 400 && at(hi) > budget; ++g) hi *= 2.0;
  if (at(hi) > budget) return false;
  for (int i = 0; i < kBisectionSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (at(mid) > budget ? lo : hi) = mid;
  }
  at(hi);
  return true;
}

double loss(std::span<const PoolSlice> slices, const std::vector<double>& x) {
  double v = 0.0;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const double t = slices[i].tp_min_mbps;
    if (t > 0.0) v += slices[i].priority * (t - x[i]) * (t - x[i]) / t;
  }
  return v;
}

CpuQuota quota_at(const PoolSlice& s, const DataPlaneModel& model, double mbps) {
  return {s.has_cuup ? model.cuup.cpu_for_throughput(mbps) : 0.0,
          s.has_upf ? model.upf.cpu_for_throughput(mbps) : 0.0};
}

std::size_t nf_instances(std::span<const PoolSlice> slices) {
  std::size_t m = 0;
  for (const auto& s : slices) m += static_cast<std::size_t>(s.has_cuup) + s.has_upf;
  return m;
}

}  // namespace

bool SlaReport::any_violation() const noexcept {
  return std::any_of(slices.begin(), slices.end(), [](const SliceSla& s) { return s.violated(); });
}

const SliceSla* SlaReport::find(const SliceId& id) const {
  for (const auto& s : slices)
    if (s.id == id) return &s;
  return nullptr;
}

double tp_violation_pct(double achieved_mbps, double reference_mbps) {
  if (!(reference_mbps > 0.0)) return 0.0;
  // snap representation noise around exact satisfaction
  if (achieved_mbps >= reference_mbps * (1.0 - 1e-12)) return 0.0;
  return std::clamp((1.0 - achieved_mbps / reference_mbps) * 100.0, 0.0, 100.0);
}

SlaReport detect(const MetricsFrame& metrics, const std::map<SliceId, SliceIntent>& intents) {
  SlaReport report;
  report.slices.reserve(metrics.slices.size());
  for (const auto& m : metrics.slices) {
    auto it = intents.find(m.id);
    if (it == intents.end())
      throw UnknownSlice(fmt::format("metrics reference unknown slice {}", m.id.str()));
    const auto& intent = it->second;
    SliceSla s;
    s.id = m.id;
    s.achieved_mbps = m.achieved_mbps;
    s.rtt_ms = m.rtt_ms;
    s.tp_violation_pct =
        tp_violation_pct(m.achieved_mbps, std::min(intent.tp_min_mbps, m.demand_mbps));
    s.delay_violated = m.rtt_ms > intent.delay_max_ms;
    report.slices.push_back(s);
  }
  return report;
}

double pool_cpu_at(const PoolSlice& slice, const DataPlaneModel& model, double mbps) {
  return quota_at(slice, model, mbps).total();
}

std::map<SliceId, CpuQuota> fair_share_baseline(std::span<const PoolSlice> slices,
                                                double budget_ms) {
  std::map<SliceId, CpuQuota> out;
  const std::size_t m = nf_instances(slices);
  const double share = m ? std::max(budget_ms, 0.0) / static_cast<double>(m) : 0.0;
  for (const auto& s : slices) out[s.id] = {s.has_cuup ? share : 0.0, s.has_upf ? share : 0.0};
  return out;
}

std::map<SliceId, SliceTarget> rebalance(std::span<const PoolSlice> slices,
                                         const DataPlaneModel& model, double budget_ms) {
  std::map<SliceId, SliceTarget> out;
  if (slices.empty()) return out;
  budget_ms = std::max(budget_ms, 0.0);

  double demand = 0.0;
  for (const auto& s : slices) demand += pool_cpu_at(s, model, s.tp_min_mbps);
  if (demand <= budget_ms + kBudgetSlack) {
    for (const auto& s : slices) out[s.id] = {s.tp_min_mbps, quota_at(s, model, s.tp_min_mbps)};
    return out;
  }

  // Top-priority slices never fall below what the unmanaged split would give them.
  const int top = std::max_element(slices.begin(), slices.end(), [](const auto& a, const auto& b) {
                    return a.priority < b.priority;
                  })->priority;
  const auto baseline = fair_share_baseline(slices, budget_ms);
  std::vector<double> lowers;
  std::vector<std::vector<Piece>> pieces;
  for (const auto& s : slices) {
    double lower = 0.0;
    if (s.priority == top) {
      const auto& q = baseline.at(s.id);
      lower = s.tp_min_mbps;
      if (s.has_cuup) lower = std::min(lower, model.cuup.throughput_for_cpu(q.cuup_ms));
      if (s.has_upf) lower = std::min(lower, model.upf.throughput_for_cpu(q.upf_ms));
    }
    lower = std::clamp(lower, 0.0, s.tp_min_mbps);
    lowers.push_back(lower);
    pieces.push_back(pieces_of(s, model, lower));
  }

  double combos = 1.0;
  for (const auto& p : pieces) combos *= static_cast<double>(p.size());
  if (combos > kMaxPinnings) {
    // too many profile points to enumerate: keep only the piece holding tp_min
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      Piece last = pieces[i].back();
      last.a = lowers[i];
      last.cpu0 = pool_cpu_at(slices[i], model, lowers[i]);
      pieces[i] = {last};
    }
  }

  // The CPU curves are not convex (the first profile segment is the steepest),
  // so pin each slice to one piece, solve every pinned problem and keep the best.
  const std::size_t n = slices.size();
  std::vector<std::size_t> idx(n, 0);
  std::vector<const Piece*> pin(n);
  std::vector<double> x, best;
  double best_val = std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) pin[i] = &pieces[i][idx[i]];
    if (solve_pinned(slices, pin, budget_ms, x)) {
      const double v = loss(slices, x);
      if (best.empty() || v < best_val - 1e-12 * std::max(1.0, best_val)) {
        best_val = v;
        best = x;
      }
    }
    std::size_t i = 0;
    while (i < n && ++idx[i] == pieces[i].size()) idx[i++] = 0;
    if (i == n) break;
  }
  if (best.empty()) best = lowers;  // floors alone exceed the budget
  for (std::size_t i = 0; i < n; ++i) out[slices[i].id] = {best[i], quota_at(slices[i], model, best[i])};
  return out;
}

std::map<SliceId, CpuQuota> desired_quotas(const NetworkState& state, const AssuranceConfig& cfg) {
  std::map<SliceId, CpuQuota> quotas;
  for (const auto& [id, slice] : state.slices)
    quotas[id] = slice_cpu_demand(cfg.model, slice.intent().tp_min_mbps);

  std::map<SliceId, double> target;  // tightest target across over-committed pools
  std::map<SliceId, std::pair<bool, bool>> constrained;  // (cuup, upf) in such a pool
  std::map<SliceId, CpuQuota> shared;                     // fair-share values when unmanaged

  for (const auto& pool : cfg.topology.pools()) {
    std::vector<PoolSlice> here;
    for (const auto& [id, slice] : state.slices) {
      const auto& p = slice.placement();
      const bool cu = p.pool_cuup == pool.id, up = p.pool_upf == pool.id;
      if (cu || up) here.push_back({id, slice.intent().tp_min_mbps, slice.intent().priority, cu, up});
    }
    if (here.empty()) continue;
    const double budget = dataplane_budget_ms(pool, cfg.topology, cfg.profiles);
    double demand = 0.0;
    for (const auto& s : here) demand += pool_cpu_at(s, cfg.model, s.tp_min_mbps);
    if (demand <= budget + kBudgetSlack) continue;

    if (state.assurance_enabled) {
      for (const auto& [id, t] : rebalance(here, cfg.model, budget)) {
        auto [it, inserted] = target.emplace(id, t.target_mbps);
        if (!inserted) it->second = std::min(it->second, t.target_mbps);
      }
    } else {
      for (const auto& [id, q] : fair_share_baseline(here, budget)) {
        auto& sq = shared[id];
        if (q.cuup_ms > 0 || pool.id == state.slices.at(id).placement().pool_cuup) {
          if (state.slices.at(id).placement().pool_cuup == pool.id) sq.cuup_ms = q.cuup_ms;
        }
        if (state.slices.at(id).placement().pool_upf == pool.id) sq.upf_ms = q.upf_ms;
      }
    }
    for (const auto& s : here) {
      auto& c = constrained[s.id];
      c.first = c.first || s.has_cuup;
      c.second = c.second || s.has_upf;
    }
  }

  for (const auto& [id, c] : constrained) {
    auto& q = quotas[id];
    if (state.assurance_enabled) {
      const double x = target.at(id);
      if (c.first) q.cuup_ms = cfg.model.cuup.cpu_for_throughput(x);
      if (c.second) q.upf_ms = cfg.model.upf.cpu_for_throughput(x);
    } else {
      const auto& s = shared.at(id);
      if (c.first) q.cuup_ms = s.cuup_ms;
      if (c.second) q.upf_ms = s.upf_ms;
    }
  }
  return quotas;
}

AssuranceOutcome assurance_tick(const NetworkState& state, const MetricsFrame* metrics,
                                const AssuranceConfig& cfg) {
  AssuranceOutcome out;
  if (metrics) {
    std::map<SliceId, SliceIntent> intents;
    for (const auto& [id, s] : state.slices) intents.emplace(id, s.intent());
    MetricsFrame known = *metrics;
    std::erase_if(known.slices, [&](const SliceMetrics& m) { return !intents.count(m.id); });
    out.report = detect(known, intents);
  }

  for (const auto& [id, q] : desired_quotas(state, cfg))
    if (!(state.slices.at(id).placement().cpu_quota == q)) out.quotas.push_back({id, q});

  for (const auto& [id, slice] : state.slices) {
    const int floor = slice.placement().prb_floor;
    PrbPolicy want{floor, std::max<double>(floor, prb_cap(slice.intent().tp_max_mbps, cfg.cell))};
    auto it = state.policies.find(id);
    if (it == state.policies.end() || !(it->second == want)) out.policies.push_back({id, want});
  }
  for (const auto& [id, policy] : state.policies)
    if (!state.slices.count(id)) out.retired_policies.push_back(id);
  return out;
}

void apply_outcome(NetworkState& state, const AssuranceOutcome& outcome) {
  for (const auto& u : outcome.quotas) state.slices.at(u.id).placement().cpu_quota = u.quota;
  for (const auto& u : outcome.policies) state.policies[u.id] = u.policy;
  for (const auto& id : outcome.retired_policies) state.policies.erase(id);
}

}  // namespace sliceorch
