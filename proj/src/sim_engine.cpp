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

#include "sliceorch/sim_engine.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "sliceorch/radio_scheduler.hpp"

namespace sliceorch {

namespace {

constexpr double kMsPerHour = 3600.0 * 1000.0;

struct NfSlot {
  std::size_t slice;  // index into the frame's slices
  bool cuup;
};

}  // namespace

const SliceMetrics* MetricsFrame::find(const SliceId& id) const {
  for (const auto& s : slices)
    if (s.id == id) return &s;
  return nullptr;
}

std::string_view to_string(ReconcileAction action) {
  switch (action) {
    case ReconcileAction::Admit: return "Admit";
    case ReconcileAction::Reject: return "Reject";
    case ReconcileAction::Resize: return "O1Reconfig";
    case ReconcileAction::Policy: return "A1Policy";
    case ReconcileAction::Decommission: return "Decommission";
  }
  return "?";
}

ReconcileAction parse_reconcile_action(std::string_view text) {
  for (auto a : {ReconcileAction::Admit, ReconcileAction::Reject, ReconcileAction::Resize,
                 ReconcileAction::Policy, ReconcileAction::Decommission})
    if (to_string(a) == text) return a;
  throw InvariantError(fmt::format("unknown reconcile action '{}'", text));
}

NetworkState replay(const std::vector<ReconcileRecord>& log, bool assurance_enabled) {
  NetworkState s;
  s.assurance_enabled = assurance_enabled;
  for (const auto& r : log) {
    switch (r.action) {
      case ReconcileAction::Admit: {
        if (!r.intent || !r.placement)
          throw InvariantError(fmt::format("record {}: Admit without intent/placement", r.sequence));
        SliceState st{*r.intent, Lifecycle::Preparation, std::nullopt};
        st = validate_transition(st, Lifecycle::Commissioning, *r.placement);
        st = validate_transition(st, Lifecycle::Operation);
        s.slices[r.slice] = ActiveSlice{st};
        break;
      }
      case ReconcileAction::Reject: break;
      case ReconcileAction::Resize: {
        auto it = s.slices.find(r.slice);
        if (it == s.slices.end() || !r.quota)
          throw InvariantError(fmt::format("record {}: Resize before Admit", r.sequence));
        it->second.placement().cpu_quota = *r.quota;
        break;
      }
      case ReconcileAction::Policy:
        if (r.assurance) s.assurance_enabled = *r.assurance;
        if (r.policy) s.policies[r.slice] = *r.policy;
        break;
      case ReconcileAction::Decommission:
        s.slices.erase(r.slice);
        s.policies.erase(r.slice);
        break;
    }
  }
  return s;
}

Simulator::Simulator(Scenario scenario) : scenario_(std::move(scenario)) {
  scenario_.validate();
  model_ = DataPlaneModel::from_profiles(scenario_.profiles);
  state_.assurance_enabled = scenario_.settings.assurance;
}

double Simulator::demand(const SliceId& id) const {
  if (auto it = demand_.find(id); it != demand_.end()) return it->second;
  if (auto it = state_.slices.find(id); it != state_.slices.end()) return it->second.intent().tp_max_mbps;
  return 0.0;
}

ResidualCapacity Simulator::residual() const {
  ResidualCapacity r = nominal_capacity(scenario_.topology);
  for (const auto& [id, slice] : state_.slices) {
    const auto& p = slice.placement();
    auto& cu = r.find(p.pool_cuup)->second;
    cu.cpu_ms -= p.cpu_quota.cuup_ms;
    cu.ram_gb -= p.ram_cuup_gb;
    auto& up = r.find(p.pool_upf)->second;
    up.cpu_ms -= p.cpu_quota.upf_ms;
    up.ram_gb -= p.ram_upf_gb;
  }
  return r;
}

ReconcileRecord& Simulator::append(ReconcileRecord record) {
  record.sequence = log_.empty() ? 1 : log_.back().sequence + 1;
  log_.push_back(std::move(record));
  return log_.back();
}

void Simulator::apply(const SimEvent& e) {
  switch (e.kind) {
    case EventKind::SliceStart:
      admit(e.intent, e.t_ms);
      break;
    case EventKind::SliceStop:
      if (state_.slices.count(e.slice)) {
        retire(e.slice, e.t_ms);
      } else {
        ReconcileRecord r;
        r.t_ms = e.t_ms;
        r.action = ReconcileAction::Reject;
        r.slice = e.slice;
        r.reason = fmt::format("stop of inactive slice {}", e.slice.str());
        append(std::move(r));
      }
      break;
    case EventKind::TrafficDemand:
      set_demand(e.slice, e.mbps);
      break;
    case EventKind::AssuranceToggle:
      set_assurance(e.enabled, e.t_ms);
      break;
  }
}

const ReconcileRecord& Simulator::admit(const SliceIntent& intent, std::int64_t t_ms) {
  intent.validate();
  if (state_.slices.count(intent.id))
    throw DuplicateSlice(
        fmt::format("duplicate S-NSSAI ({}, {})", intent.id.sst, intent.id.sd));

  ReconcileRecord rec;
  rec.t_ms = t_ms;
  rec.slice = intent.id;
  rec.intent = intent;
  try {
    Placement p = place_slice(intent, placement_context(), residual());
    int floors = p.prb_floor;
    for (const auto& [id, s] : state_.slices) floors += s.placement().prb_floor;
    if (floors > scenario_.cell.prb_budget)
      throw AdmissionOverflow(fmt::format("slice {}: PRB floors {} exceed budget {}",
                                          intent.id.str(), floors, scenario_.cell.prb_budget));
    SliceState st{intent, Lifecycle::Preparation, std::nullopt};
    st = validate_transition(st, Lifecycle::Commissioning, p);
    st = validate_transition(st, Lifecycle::Operation);
    state_.slices[intent.id] = ActiveSlice{st};
    rec.action = ReconcileAction::Admit;
    rec.placement = std::move(p);
    dirty_ = true;
  } catch (const SlaUnsatisfiable& e) {
    rec.action = ReconcileAction::Reject;
    rec.reason = fmt::format("SlaUnsatisfiable: {}", e.what());
  } catch (const NoFeasiblePlacement& e) {
    rec.action = ReconcileAction::Reject;
    rec.reason = fmt::format("NoFeasiblePlacement: {}", e.what());
  } catch (const AdmissionOverflow& e) {
    rec.action = ReconcileAction::Reject;
    rec.reason = fmt::format("AdmissionOverflow: {}", e.what());
  }
  return append(std::move(rec));
}

const ReconcileRecord& Simulator::retire(const SliceId& id, std::int64_t t_ms) {
  auto it = state_.slices.find(id);
  if (it == state_.slices.end()) throw UnknownSlice(fmt::format("no active slice {}", id.str()));
  SliceState st = validate_transition(it->second.state, Lifecycle::Decommissioning);
  validate_transition(st, Lifecycle::Terminated);
  state_.slices.erase(it);
  state_.policies.erase(id);
  demand_.erase(id);
  dirty_ = true;
  ReconcileRecord rec;
  rec.t_ms = t_ms;
  rec.action = ReconcileAction::Decommission;
  rec.slice = id;
  return append(std::move(rec));
}

void Simulator::set_demand(const SliceId& id, double mbps) {
  if (!(mbps >= 0.0) || !std::isfinite(mbps))
    throw InvariantError(fmt::format("demand for {} must be finite and nonnegative", id.str()));
  demand_[id] = mbps;
}

void Simulator::set_assurance(bool enabled, std::int64_t t_ms) {
  if (state_.assurance_enabled == enabled) return;
  state_.assurance_enabled = enabled;
  dirty_ = true;
  ReconcileRecord rec;
  rec.t_ms = t_ms;
  rec.action = ReconcileAction::Policy;
  rec.assurance = enabled;
  append(std::move(rec));
}

void Simulator::control(std::int64_t t_ms) {
  const MetricsFrame* seen = last_frame_ ? &*last_frame_ : nullptr;
  AssuranceOutcome out = assurance_tick(state_, seen, assurance_config());
  apply_outcome(state_, out);
  for (const auto& u : out.quotas) {
    ReconcileRecord rec;
    rec.t_ms = t_ms;
    rec.action = ReconcileAction::Resize;
    rec.slice = u.id;
    rec.quota = u.quota;
    append(std::move(rec));
  }
  for (const auto& u : out.policies) {
    ReconcileRecord rec;
    rec.t_ms = t_ms;
    rec.action = ReconcileAction::Policy;
    rec.slice = u.id;
    rec.policy = u.policy;
    append(std::move(rec));
  }
  dirty_ = false;
  last_control_ = t_ms;
}

const MetricsFrame& Simulator::step(std::int64_t t_ms) {
  if (last_frame_ && t_ms < last_frame_->t_ms)
    throw InvariantError(fmt::format("step at {} ms precedes last frame at {} ms", t_ms,
                                     last_frame_->t_ms));
  if (dirty_ || !last_control_ || t_ms - *last_control_ >= scenario_.settings.control_period_ms)
    control(t_ms);

  MetricsFrame frame = sample(t_ms);
  frame.seq = next_frame_++;
  frame.cumulative_cost = 0.0;
  if (last_frame_) {
    const double seconds = static_cast<double>(t_ms - last_frame_->t_ms) / 1000.0;
    frame.cumulative_cost =
        last_frame_->cumulative_cost + frame_cost(*last_frame_, scenario_, model_, seconds);
  }
  now_ = t_ms;
  last_frame_ = std::move(frame);
  return *last_frame_;
}

MetricsFrame Simulator::sample(std::int64_t t_ms) const {
  const auto& cell = scenario_.cell;
  MetricsFrame f;
  f.t_ms = t_ms;
  f.assurance_enabled = state_.assurance_enabled;

  // Radio: water-fill PRBs between the policy floors and the useful cap.
  std::vector<PrbRequest> requests;
  for (const auto& [id, slice] : state_.slices) {
    const auto& p = slice.placement();
    PrbPolicy pol{p.prb_floor, prb_cap(slice.intent().tp_max_mbps, cell)};
    if (auto it = state_.policies.find(id); it != state_.policies.end()) pol = it->second;
    const double floor = pol.floor;
    const double useful = std::min(pol.cap, demand(id) / cell.mbps_per_prb());
    requests.push_back({floor, std::max(floor, useful)});

    SliceMetrics m;
    m.id = id;
    m.pool_cuup = p.pool_cuup;
    m.pool_upf = p.pool_upf;
    m.demand_mbps = demand(id);
    m.rtt_ms = p.predicted_rtt_ms;
    m.prb_floor = pol.floor;
    m.cuup.quota_ms = p.cpu_quota.cuup_ms;
    m.upf.quota_ms = p.cpu_quota.upf_ms;
    f.slices.push_back(std::move(m));
  }
  const PrbAllocation prbs = waterfill(requests, cell.prb_budget);

  std::vector<double> bound(f.slices.size());
  std::size_t i = 0;
  for (const auto& [id, slice] : state_.slices) {
    auto& m = f.slices[i];
    m.granted_prbs = prbs.grants[i].granted;
    bound[i] = std::min({prb_throughput(m.granted_prbs, cell), m.demand_mbps,
                         slice.intent().tp_max_mbps});
    ++i;
  }

  // Compute: quotas are guaranteed up to need; spare budget is shared max-min.
  for (const auto& pool : scenario_.topology.pools()) {
    PoolMetrics pm;
    pm.id = pool.id;
    pm.dataplane_budget_ms = dataplane_budget_ms(pool, scenario_.topology, scenario_.profiles);
    std::vector<NfSlot> slots;
    std::vector<double> floors, caps;
    for (std::size_t k = 0; k < f.slices.size(); ++k) {
      for (bool cu : {true, false}) {
        const auto& m = f.slices[k];
        if ((cu ? m.pool_cuup : m.pool_upf) != pool.id) continue;
        const double quota = cu ? m.cuup.quota_ms : m.upf.quota_ms;
        const double need = (cu ? model_.cuup : model_.upf).cpu_for_throughput(bound[k]);
        slots.push_back({k, cu});
        floors.push_back(std::min(quota, need));
        caps.push_back(need);
        pm.quota_sum_ms += quota;
      }
    }
    const double budget = std::max(pm.dataplane_budget_ms, 0.0);
    double floor_sum = 0.0;
    for (double v : floors) floor_sum += v;
    if (floor_sum > budget && floor_sum > 0.0)
      for (double& v : floors) v *= budget / floor_sum;
    const auto limits = max_min_fill(floors, caps, budget);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      auto& m = f.slices[slots[s].slice];
      (slots[s].cuup ? m.cuup : m.upf).limit_ms = limits[s];
    }
    f.pools.push_back(std::move(pm));
  }

  for (std::size_t k = 0; k < f.slices.size(); ++k) {
    auto& m = f.slices[k];
    m.achieved_mbps = std::min({bound[k], model_.cuup.throughput_for_cpu(m.cuup.limit_ms),
                                model_.upf.throughput_for_cpu(m.upf.limit_ms)});
    m.cuup.used_ms = std::min(m.cuup.limit_ms, model_.cuup.cpu_for_throughput(m.achieved_mbps));
    m.upf.used_ms = std::min(m.upf.limit_ms, model_.upf.cpu_for_throughput(m.achieved_mbps));
  }

  for (std::size_t p = 0; p < f.pools.size(); ++p) {
    const auto& pool = scenario_.topology.pools()[p];
    auto& pm = f.pools[p];
    double used = pool.cpu_capacity_ms - pm.dataplane_budget_ms;
    for (const auto& m : f.slices) {
      if (m.pool_cuup == pool.id) used += m.cuup.used_ms;
      if (m.pool_upf == pool.id) used += m.upf.used_ms;
    }
    pm.cpu_used_ms = used;
    pm.cpu_utilization_fraction =
        pool.cpu_capacity_ms > 0 ? std::clamp(used / pool.cpu_capacity_ms, 0.0, 1.0) : 0.0;
  }
  return f;
}

double frame_cost(const MetricsFrame& frame, const Scenario& scenario, const DataPlaneModel& model,
                  double seconds) {
  if (seconds <= 0.0) return 0.0;
  const double hours = seconds * 1000.0 / kMsPerHour;
  double total = 0.0;
  for (const auto& m : frame.slices) {
    const auto& cu = scenario.topology.pool(m.pool_cuup);
    const auto& up = scenario.topology.pool(m.pool_upf);
    const NfCharge nfs[] = {{m.cuup.quota_ms, model.cuup_ram_gb, cu.rates},
                            {m.upf.quota_ms, model.upf_ram_gb, up.rates}};
    const ThroughputSegment seg[] = {{seconds, m.achieved_mbps}};
    total += accrue_cost(nfs, up.rates.bw_rate, seg, hours);
  }
  return total;
}

RunResult run(const Scenario& scenario) {
  Simulator sim(scenario);
  RunResult out;
  const auto& st = scenario.settings;
  std::size_t next = 0;
  for (std::int64_t t = 0; t < st.horizon_ms; t += st.tick_ms) {
    while (next < scenario.events.size() && scenario.events[next].t_ms <= t)
      sim.apply(scenario.events[next++]);
    out.frames.push_back(sim.step(t));
  }
  out.log = sim.log();
  out.final_state = sim.state();
  return out;
}

std::vector<std::string> validate_frame(const MetricsFrame& frame, const Scenario& scenario,
                                        const std::map<SliceId, SliceIntent>& intents) {
  std::vector<std::string> problems;
  const auto& cell = scenario.cell;
  auto near_le = [](double a, double b) { return a <= b + 1e-9 * std::max(1.0, std::fabs(b)); };

  double prbs = 0.0;
  for (const auto& m : frame.slices) {
    const std::string who = fmt::format("t={} slice {}", frame.t_ms, m.id.str());
    auto it = intents.find(m.id);
    if (it == intents.end()) {
      problems.push_back(who + ": no intent");
      continue;
    }
    prbs += m.granted_prbs;
    // Interpolate the profile points directly rather than through the curve class.
    auto tp_at = [](const NfProfile& prof, double cpu) {
      const auto& pts = prof.points;
      double x0 = 0.0, y0 = 0.0;
      for (const auto& p : pts) {
        if (cpu <= p.cpu_ms) {
          if (p.cpu_ms == x0) return p.throughput_mbps;
          return y0 + (cpu - x0) * (p.throughput_mbps - y0) / (p.cpu_ms - x0);
        }
        x0 = p.cpu_ms;
        y0 = p.throughput_mbps;
      }
      const auto& a = pts[pts.size() - 2];
      const auto& b = pts.back();
      return b.throughput_mbps +
             (cpu - b.cpu_ms) * (b.throughput_mbps - a.throughput_mbps) / (b.cpu_ms - a.cpu_ms);
    };
    const double expected =
        std::min({m.granted_prbs * cell.cell_max_mbps / cell.prb_budget,
                  tp_at(scenario.profiles.at(NfType::CuUp), m.cuup.limit_ms),
                  tp_at(scenario.profiles.at(NfType::Upf), m.upf.limit_ms), m.demand_mbps,
                  it->second.tp_max_mbps});
    if (std::fabs(m.achieved_mbps - expected) > 1e-6 * std::max(1.0, expected))
      problems.push_back(fmt::format("{}: achieved {} but models give {}", who, m.achieved_mbps,
                                     expected));
    if (m.granted_prbs + 1e-9 < m.prb_floor && m.demand_mbps >= m.prb_floor * cell.mbps_per_prb())
      problems.push_back(fmt::format("{}: granted {} below floor {}", who, m.granted_prbs, m.prb_floor));
    if (!near_le(m.cuup.used_ms, m.cuup.limit_ms) || !near_le(m.upf.used_ms, m.upf.limit_ms))
      problems.push_back(who + ": CPU used exceeds limit");
  }
  if (!near_le(prbs, cell.prb_budget))
    problems.push_back(fmt::format("t={}: granted PRBs {} exceed budget {}", frame.t_ms, prbs,
                                   cell.prb_budget));
  for (const auto& p : frame.pools) {
    if (p.cpu_utilization_fraction < 0.0 || p.cpu_utilization_fraction > 1.0)
      problems.push_back(fmt::format("t={} pool {}: utilization out of range", frame.t_ms, p.id));
    if (!near_le(p.quota_sum_ms, std::max(p.dataplane_budget_ms, 0.0)))
      problems.push_back(fmt::format("t={} pool {}: quotas {} exceed budget {}", frame.t_ms, p.id,
                                     p.quota_sum_ms, p.dataplane_budget_ms));
    double limits = 0.0;
    for (const auto& m : frame.slices) {
      if (m.pool_cuup == p.id) limits += m.cuup.limit_ms;
      if (m.pool_upf == p.id) limits += m.upf.limit_ms;
    }
    if (!near_le(limits, std::max(p.dataplane_budget_ms, 0.0)))
      problems.push_back(fmt::format("t={} pool {}: limits {} exceed budget", frame.t_ms, p.id, limits));
  }
  return problems;
}

}  // namespace sliceorch
