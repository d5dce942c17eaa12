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

#include "sliceorch/slice_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace sliceorch {

namespace {

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

std::pair<std::string, std::string> link_key(std::string_view a, std::string_view b) {
  std::string x(a), y(b);
  if (y < x) std::swap(x, y);
  return {std::move(x), std::move(y)};
}

}  // namespace

std::string SliceId::str() const { return fmt::format("{}-{}", sst, sd); }

SliceId SliceId::parse(std::string_view text) {
  auto dash = text.find('-');
  if (dash == std::string_view::npos)
    throw InvariantError(fmt::format("slice id '{}' is not of the form sst-sd", text));
  SliceId id;
  auto parse_part = [&](std::string_view part, int& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc{} || ptr != part.data() + part.size() || part.empty())
      throw InvariantError(fmt::format("slice id '{}' is not of the form sst-sd", text));
  };
  parse_part(text.substr(0, dash), id.sst);
  parse_part(text.substr(dash + 1), id.sd);
  return id;
}

void SliceIntent::validate() const {
  const std::string who = fmt::format("SliceIntent {}", id.str());
  if (id.sst < 0 || id.sd < 0) throw InvariantError(who + ": sst and sd must be nonnegative");
  if (!finite_nonneg(delay_min_ms) || !finite_nonneg(delay_max_ms) ||
      !finite_nonneg(tp_min_mbps) || !finite_nonneg(tp_max_mbps))
    throw InvariantError(who + ": delay and throughput bounds must be finite and nonnegative");
  if (delay_min_ms > delay_max_ms)
    throw InvariantError(who + ": delay_min_ms must not exceed delay_max_ms");
  if (tp_min_mbps > tp_max_mbps)
    throw InvariantError(who + ": tp_min_mbps must not exceed tp_max_mbps");
  if (priority < 1) throw InvariantError(who + ": priority must be >= 1");
}

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::Edge: return "Edge";
    case Tier::Regional: return "Regional";
    case Tier::Central: return "Central";
  }
  return "?";
}

Tier parse_tier(std::string_view text) {
  if (text == "Edge") return Tier::Edge;
  if (text == "Regional") return Tier::Regional;
  if (text == "Central") return Tier::Central;
  throw InvariantError(fmt::format("unknown tier '{}'", text));
}

void DcPool::validate() const {
  const std::string who = fmt::format("DcPool {}", id);
  if (id.empty()) throw InvariantError("DcPool: id must not be empty");
  if (!finite_nonneg(cpu_capacity_ms) || !finite_nonneg(ram_capacity_gb) ||
      !finite_nonneg(rates.cpu_rate) || !finite_nonneg(rates.ram_rate) ||
      !finite_nonneg(rates.bw_rate) || !finite_nonneg(fixed_overhead_cpu_ms))
    throw InvariantError(who + ": capacities and rates must be nonnegative");
  if (fixed_overhead_cpu_ms > cpu_capacity_ms)
    throw InvariantError(who + ": fixed_overhead_cpu_ms exceeds cpu_capacity_ms");
}

Topology::Topology(std::vector<DcPool> pools,
                   std::map<std::pair<std::string, std::string>, double> link_delay_ms,
                   double radio_delay_ms, double core_delay_ms)
    : pools_(std::move(pools)), radio_delay_ms_(radio_delay_ms), core_delay_ms_(core_delay_ms) {
  for (auto& [key, delay] : link_delay_ms) {
    auto norm = link_key(key.first, key.second);
    auto [it, inserted] = links_.emplace(norm, delay);
    if (!inserted && it->second != delay)
      throw InvariantError(fmt::format("Topology: asymmetric link delay between {} and {}",
                                       norm.first, norm.second));
  }
}

const DcPool& Topology::pool(std::string_view id) const {
  auto it = std::find_if(pools_.begin(), pools_.end(), [&](const DcPool& p) { return p.id == id; });
  if (it == pools_.end()) throw UnknownPool(fmt::format("unknown pool '{}'", id));
  return *it;
}

bool Topology::has_pool(std::string_view id) const noexcept {
  return std::any_of(pools_.begin(), pools_.end(), [&](const DcPool& p) { return p.id == id; });
}

double Topology::link_delay(std::string_view a, std::string_view b) const {
  if (!has_pool(a)) throw UnknownPool(fmt::format("unknown pool '{}'", a));
  if (!has_pool(b)) throw UnknownPool(fmt::format("unknown pool '{}'", b));
  if (a == b) return 0.0;
  auto it = links_.find(link_key(a, b));
  if (it == links_.end())
    throw InvariantError(fmt::format("Topology: no link delay between {} and {}", a, b));
  return it->second;
}

const DcPool& Topology::edge_pool() const {
  for (const auto& p : pools_)
    if (p.tier == Tier::Edge) return p;
  throw InvariantError("Topology: no Edge pool to host the DU");
}

const DcPool& Topology::control_plane_pool() const {
  for (const auto& p : pools_)
    if (p.tier == Tier::Central) return p;
  return edge_pool();
}

void Topology::validate() const {
  if (pools_.empty()) throw InvariantError("Topology: at least one pool required");
  for (const auto& p : pools_) p.validate();
  for (std::size_t i = 0; i < pools_.size(); ++i)
    for (std::size_t j = i + 1; j < pools_.size(); ++j)
      if (pools_[i].id == pools_[j].id)
        throw InvariantError(fmt::format("Topology: duplicate pool id '{}'", pools_[i].id));
  auto edges = std::count_if(pools_.begin(), pools_.end(),
                             [](const DcPool& p) { return p.tier == Tier::Edge; });
  if (edges != 1)
    throw InvariantError(
        fmt::format("Topology: exactly one Edge pool must host the DU (found {})", edges));
  if (!finite_nonneg(radio_delay_ms_) || !finite_nonneg(core_delay_ms_))
    throw InvariantError("Topology: radio and core delays must be nonnegative");
  for (const auto& [key, delay] : links_) {
    if (!has_pool(key.first) || !has_pool(key.second))
      throw InvariantError(fmt::format("Topology: link {}<->{} names an unknown pool",
                                       key.first, key.second));
    if (!finite_nonneg(delay))
      throw InvariantError(fmt::format("Topology: link {}<->{} delay must be nonnegative",
                                       key.first, key.second));
    if (key.first == key.second && delay != 0.0)
      throw InvariantError(fmt::format("Topology: link delay of {} to itself must be zero",
                                       key.first));
  }
  for (std::size_t i = 0; i < pools_.size(); ++i)
    for (std::size_t j = i + 1; j < pools_.size(); ++j)
      if (!links_.count(link_key(pools_[i].id, pools_[j].id)))
        throw InvariantError(fmt::format("Topology: no link delay between {} and {}",
                                         pools_[i].id, pools_[j].id));
}

void CellConfig::validate() const {
  if (total_prbs <= 0 || prb_budget <= 0)
    throw InvariantError("CellConfig: total_prbs and prb_budget must be positive");
  if (prb_budget > total_prbs)
    throw InvariantError("CellConfig: prb_budget must not exceed total_prbs");
  if (!(std::isfinite(cell_max_mbps) && cell_max_mbps > 0.0))
    throw InvariantError("CellConfig: mbps_per_prb must be finite and positive");
  if (prb_quantum < 1) throw InvariantError("CellConfig: prb_quantum must be >= 1");
}

std::string_view to_string(NfType type) {
  switch (type) {
    case NfType::CuUp: return "CU-UP";
    case NfType::Upf: return "UPF";
    case NfType::CuCp: return "CU-CP";
    case NfType::Du: return "DU";
    case NfType::Amf: return "AMF";
    case NfType::Smf: return "SMF";
  }
  return "?";
}

NfType parse_nf_type(std::string_view text) {
  for (auto t : {NfType::CuUp, NfType::Upf, NfType::CuCp, NfType::Du, NfType::Amf, NfType::Smf})
    if (to_string(t) == text) return t;
  throw InvariantError(fmt::format("unknown NF type '{}'", text));
}

bool is_data_plane(NfType type) noexcept { return type == NfType::CuUp || type == NfType::Upf; }

double NfProfile::ram_demand_mb() const noexcept {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, p.ram_mb);
  return m;
}

double NfProfile::baseline_cpu_ms() const noexcept {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, p.cpu_ms);
  return m;
}

void NfProfile::validate() const {
  const std::string who = fmt::format("NfProfile {}", to_string(nf_type));
  if (points.empty()) throw InvariantError(who + ": at least one point required");
  if (is_data_plane(nf_type) && points.size() < 2)
    throw InvariantError(who + ": data-plane profiles need at least two points");
  if (is_data_plane(nf_type) && shared)
    throw InvariantError(who + ": data-plane NFs are per slice, not shared");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!finite_nonneg(p.throughput_mbps) || !finite_nonneg(p.cpu_ms) || !finite_nonneg(p.ram_mb))
      throw InvariantError(who + ": point values must be finite and nonnegative");
    if (i > 0) {
      if (!(p.throughput_mbps > points[i - 1].throughput_mbps))
        throw InvariantError(who + ": points must be strictly increasing in throughput");
      if (p.cpu_ms < points[i - 1].cpu_ms)
        throw InvariantError(who + ": points must be nondecreasing in cpu_ms");
    }
  }
}

double dataplane_budget_ms(const DcPool& pool, const Topology& topology,
                           const NfProfileSet& profiles) {
  double shared = 0.0;
  for (const auto& [type, profile] : profiles) {
    if (!profile.shared) continue;
    const DcPool& host =
        type == NfType::Du ? topology.edge_pool() : topology.control_plane_pool();
    if (host.id == pool.id) shared += profile.baseline_cpu_ms();
  }
  return std::max(0.0, pool.cpu_capacity_ms - pool.fixed_overhead_cpu_ms - shared);
}

std::string_view to_string(Lifecycle lifecycle) {
  switch (lifecycle) {
    case Lifecycle::Preparation: return "Preparation";
    case Lifecycle::Commissioning: return "Commissioning";
    case Lifecycle::Operation: return "Operation";
    case Lifecycle::Decommissioning: return "Decommissioning";
    case Lifecycle::Terminated: return "Terminated";
  }
  return "?";
}

bool is_legal_transition(Lifecycle from, Lifecycle to) noexcept {
  return static_cast<int>(to) == static_cast<int>(from) + 1;
}

SliceState validate_transition(SliceState state, Lifecycle target,
                               std::optional<Placement> placement) {
  if (!is_legal_transition(state.lifecycle, target))
    throw IllegalTransition(fmt::format("slice {}: illegal transition {} -> {}",
                                        state.intent.id.str(), to_string(state.lifecycle),
                                        to_string(target)));
  switch (target) {
    case Lifecycle::Commissioning:
      if (!placement)
        throw IllegalTransition(fmt::format(
            "slice {}: Preparation -> Commissioning requires a placement", state.intent.id.str()));
      state.placement = std::move(placement);
      break;
    case Lifecycle::Terminated:
      state.placement.reset();
      break;
    default:
      if (placement) state.placement = std::move(placement);
      break;
  }
  state.lifecycle = target;
  return state;
}

}  // namespace sliceorch
