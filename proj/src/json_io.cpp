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

#include "sliceorch/json_io.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>
#include <set>

#include <fmt/format.h>

namespace sliceorch {

using nlohmann::json;

namespace {

// Walks one object node, remembering its path for error messages and
// rejecting keys the schema does not know.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ScenarioError(path_, "expected an object");
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    std::set<std::string> known(keys.begin(), keys.end());
    for (auto it = node_.begin(); it != node_.end(); ++it)
      if (!known.count(it.key())) throw ScenarioError(child(it.key()), "unknown key");
  }

  bool has(const char* key) const { return node_.contains(key); }
  std::string child(std::string_view key) const { return fmt::format("{}.{}", path_, key); }

  const json& at(const char* key) const {
    if (!node_.contains(key)) throw ScenarioError(child(key), "missing required key");
    return node_.at(key);
  }

  double number(const char* key) const {
    const json& v = at(key);
    if (!v.is_number()) throw ScenarioError(child(key), "expected a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) throw ScenarioError(child(key), "expected a finite number");
    return d;
  }
  double number(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  std::int64_t integer(const char* key) const {
    const json& v = at(key);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    if (v.is_number_float()) {
      double d = v.get<double>();
      if (std::isfinite(d) && std::floor(d) == d && std::fabs(d) < 9.0e15)
        return static_cast<std::int64_t>(d);
    }
    throw ScenarioError(child(key), "expected an integer");
  }
  std::int64_t integer(const char* key, std::int64_t fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  int small_int(const char* key) const {
    auto v = integer(key);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      throw ScenarioError(child(key), "integer out of range");
    return static_cast<int>(v);
  }
  int small_int(const char* key, int fallback) const { return has(key) ? small_int(key) : fallback; }

  std::string string(const char* key) const {
    const json& v = at(key);
    if (!v.is_string()) throw ScenarioError(child(key), "expected a string");
    return v.get<std::string>();
  }
  std::string string(const char* key, std::string fallback) const {
    return has(key) ? string(key) : std::move(fallback);
  }

  bool boolean(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) throw ScenarioError(child(key), "expected true or false");
    return v.get<bool>();
  }

  const json& array(const char* key) const {
    const json& v = at(key);
    if (!v.is_array()) throw ScenarioError(child(key), "expected a list");
    return v;
  }

  const std::string& path() const { return path_; }

 private:
  const json& node_;
  std::string path_;
};

// Re-throws invariant failures with the path that produced the value.
template <typename F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ScenarioError&) {
    throw;
  } catch (const InvariantError& e) {
    throw InvariantError(fmt::format("{}: {}", path, e.what()));
  }
}

// Parses a token (enum name, slice id); a bad token is a schema error at `path`.
template <typename F>
auto token_at(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InvariantError& e) {
    throw ScenarioError(path, e.what());
  }
}

DcPool pool_from_json(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  r.allow_only({"id", "tier", "cpu_capacity_ms", "ram_capacity_gb", "cpu_rate", "ram_rate",
                "bw_rate", "fixed_overhead_cpu_ms"});
  DcPool p;
  p.id = r.string("id");
  p.tier = token_at(r.child("tier"), [&] { return parse_tier(r.string("tier")); });
  p.cpu_capacity_ms = r.number("cpu_capacity_ms");
  p.ram_capacity_gb = r.number("ram_capacity_gb");
  p.rates.cpu_rate = r.number("cpu_rate");
  p.rates.ram_rate = r.number("ram_rate");
  p.rates.bw_rate = r.number("bw_rate");
  p.fixed_overhead_cpu_ms = r.number("fixed_overhead_cpu_ms", 0.0);
  at_path(path, [&] { p.validate(); return 0; });
  return p;
}

NfProfile profile_from_json(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  r.allow_only({"nf_type", "shared", "points"});
  NfProfile prof;
  prof.nf_type = token_at(r.child("nf_type"), [&] { return parse_nf_type(r.string("nf_type")); });
  prof.shared = r.boolean("shared", false);
  const json& pts = r.array("points");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ObjectReader pr(pts[i], fmt::format("{}.points[{}]", path, i));
    pr.allow_only({"throughput_mbps", "cpu_ms", "ram_mb"});
    prof.points.push_back({pr.number("throughput_mbps"), pr.number("cpu_ms"), pr.number("ram_mb")});
  }
  at_path(path, [&] { prof.validate(); return 0; });
  return prof;
}

SimEvent event_from_json(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  const std::string kind = r.string("kind");
  const std::int64_t t = r.integer("t_ms");
  if (t < 0) throw ScenarioError(r.child("t_ms"), "timestamps must be nonnegative");
  auto slice_id = [&] {
    return token_at(r.child("slice"), [&] { return SliceId::parse(r.string("slice")); });
  };
  if (kind == "SliceStart") {
    r.allow_only({"t_ms", "kind", "intent"});
    return SimEvent::start(t, intent_from_json(r.at("intent"), r.child("intent")));
  }
  if (kind == "SliceStop") {
    r.allow_only({"t_ms", "kind", "slice"});
    return SimEvent::stop(t, slice_id());
  }
  if (kind == "TrafficDemand") {
    r.allow_only({"t_ms", "kind", "slice", "mbps"});
    double mbps = r.number("mbps");
    if (mbps < 0) throw ScenarioError(r.child("mbps"), "demand must be nonnegative");
    return SimEvent::demand(t, slice_id(), mbps);
  }
  if (kind == "AssuranceToggle") {
    r.allow_only({"t_ms", "kind", "enabled"});
    if (!r.has("enabled")) throw ScenarioError(r.child("enabled"), "missing required key");
    return SimEvent::toggle(t, r.boolean("enabled", true));
  }
  throw ScenarioError(r.child("kind"), fmt::format("unknown event kind '{}'", kind));
}

}  // namespace

json to_json(const SliceIntent& intent) {
  return json{{"sst", intent.id.sst},
              {"sd", intent.id.sd},
              {"delay_min_ms", intent.delay_min_ms},
              {"delay_max_ms", intent.delay_max_ms},
              {"tp_min_mbps", intent.tp_min_mbps},
              {"tp_max_mbps", intent.tp_max_mbps},
              {"priority", intent.priority}};
}

SliceIntent intent_from_json(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  r.allow_only({"sst", "sd", "delay_min_ms", "delay_max_ms", "tp_min_mbps", "tp_max_mbps",
                "priority"});
  SliceIntent in;
  in.id.sst = r.small_int("sst");
  in.id.sd = r.small_int("sd");
  in.delay_min_ms = r.number("delay_min_ms", 0.0);
  in.delay_max_ms = r.number("delay_max_ms");
  in.tp_min_mbps = r.number("tp_min_mbps");
  in.tp_max_mbps = r.number("tp_max_mbps");
  in.priority = r.small_int("priority", 1);
  at_path(path, [&] { in.validate(); return 0; });
  return in;
}

json to_json(const DcPool& pool) {
  return json{{"id", pool.id},
              {"tier", std::string(to_string(pool.tier))},
              {"cpu_capacity_ms", pool.cpu_capacity_ms},
              {"ram_capacity_gb", pool.ram_capacity_gb},
              {"cpu_rate", pool.rates.cpu_rate},
              {"ram_rate", pool.rates.ram_rate},
              {"bw_rate", pool.rates.bw_rate},
              {"fixed_overhead_cpu_ms", pool.fixed_overhead_cpu_ms}};
}

json to_json(const Topology& topology) {
  json pairs = json::array();
  for (const auto& [key, delay] : topology.links())
    pairs.push_back(json{{"a", key.first}, {"b", key.second}, {"delay_ms", delay}});
  json pools = json::array();
  for (const auto& p : topology.pools()) pools.push_back(to_json(p));
  return json{{"pools", pools},
              {"links", json{{"radio_delay_ms", topology.radio_delay_ms()},
                             {"core_delay_ms", topology.core_delay_ms()},
                             {"pairs", pairs}}}};
}

json to_json(const CellConfig& cell) {
  return json{{"total_prbs", cell.total_prbs},
              {"prb_budget", cell.prb_budget},
              {"cell_max_mbps", cell.cell_max_mbps},
              {"prb_quantum", cell.prb_quantum}};
}

json to_json(const NfProfile& profile) {
  json pts = json::array();
  for (const auto& p : profile.points)
    pts.push_back(json{{"throughput_mbps", p.throughput_mbps}, {"cpu_ms", p.cpu_ms},
                       {"ram_mb", p.ram_mb}});
  return json{{"nf_type", std::string(to_string(profile.nf_type))},
              {"shared", profile.shared},
              {"points", pts}};
}

json to_json(const Placement& placement) {
  return json{{"slice", placement.slice.str()},
              {"pool_cuup", placement.pool_cuup},
              {"pool_upf", placement.pool_upf},
              {"cpu_cuup_ms", placement.cpu_quota.cuup_ms},
              {"cpu_upf_ms", placement.cpu_quota.upf_ms},
              {"ram_cuup_gb", placement.ram_cuup_gb},
              {"ram_upf_gb", placement.ram_upf_gb},
              {"prb_floor", placement.prb_floor},
              {"predicted_rtt_ms", placement.predicted_rtt_ms}};
}

json to_json(const SliceState& state) {
  json j{{"id", state.intent.id.str()},
         {"intent", to_json(state.intent)},
         {"lifecycle", std::string(to_string(state.lifecycle))}};
  j["placement"] = state.placement ? to_json(*state.placement) : json(nullptr);
  return j;
}

json to_json(const SimEvent& event) {
  json j{{"t_ms", event.t_ms}, {"kind", std::string(to_string(event.kind))}};
  switch (event.kind) {
    case EventKind::SliceStart: j["intent"] = to_json(event.intent); break;
    case EventKind::SliceStop: j["slice"] = event.slice.str(); break;
    case EventKind::TrafficDemand:
      j["slice"] = event.slice.str();
      j["mbps"] = event.mbps;
      break;
    case EventKind::AssuranceToggle: j["enabled"] = event.enabled; break;
  }
  return j;
}

json to_json(const Scenario& scenario) {
  json topo = to_json(scenario.topology);
  json profiles = json::array();
  for (const auto& [type, prof] : scenario.profiles) profiles.push_back(to_json(prof));
  json events = json::array();
  for (const auto& e : scenario.events) events.push_back(to_json(e));
  return json{{"name", scenario.name},
              {"settings", json{{"tick_ms", scenario.settings.tick_ms},
                                {"control_period_ms", scenario.settings.control_period_ms},
                                {"horizon_ms", scenario.settings.horizon_ms},
                                {"assurance", scenario.settings.assurance}}},
              {"pools", topo["pools"]},
              {"links", topo["links"]},
              {"cell", to_json(scenario.cell)},
              {"nf_profiles", profiles},
              {"events", events}};
}

Scenario scenario_from_json(const json& root) {
  ObjectReader r(root, "$");
  r.allow_only({"name", "settings", "pools", "links", "cell", "nf_profiles", "events"});
  Scenario s;
  s.name = r.string("name", "");

  const json& pools = r.array("pools");
  if (pools.empty()) throw ScenarioError(r.child("pools"), "at least one pool required");
  std::vector<DcPool> pool_list;
  for (std::size_t i = 0; i < pools.size(); ++i)
    pool_list.push_back(pool_from_json(pools[i], fmt::format("$.pools[{}]", i)));

  ObjectReader links(r.at("links"), r.child("links"));
  links.allow_only({"radio_delay_ms", "core_delay_ms", "pairs"});
  std::map<std::pair<std::string, std::string>, double> link_map;
  const json& pairs = links.has("pairs") ? links.array("pairs") : json::array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    ObjectReader lr(pairs[i], fmt::format("$.links.pairs[{}]", i));
    lr.allow_only({"a", "b", "delay_ms"});
    auto a = lr.string("a"), b = lr.string("b");
    if (b < a) std::swap(a, b);
    double d = lr.number("delay_ms");
    auto [it, inserted] = link_map.emplace(std::make_pair(a, b), d);
    if (!inserted && it->second != d)
      throw InvariantError(fmt::format("{}: Topology: asymmetric link delay between {} and {}",
                                       lr.path(), a, b));
  }
  s.topology = at_path("$.links", [&] {
    return Topology(std::move(pool_list), std::move(link_map), links.number("radio_delay_ms"),
                    links.number("core_delay_ms"));
  });
  at_path("$", [&] { s.topology.validate(); return 0; });

  ObjectReader cell(r.at("cell"), r.child("cell"));
  cell.allow_only({"total_prbs", "prb_budget", "cell_max_mbps", "prb_quantum"});
  s.cell.total_prbs = cell.small_int("total_prbs");
  s.cell.prb_budget = cell.small_int("prb_budget");
  s.cell.cell_max_mbps = cell.number("cell_max_mbps");
  s.cell.prb_quantum = cell.small_int("prb_quantum", 5);
  at_path("$.cell", [&] { s.cell.validate(); return 0; });

  const json& profs = r.array("nf_profiles");
  for (std::size_t i = 0; i < profs.size(); ++i) {
    auto path = fmt::format("$.nf_profiles[{}]", i);
    auto prof = profile_from_json(profs[i], path);
    auto type = prof.nf_type;
    if (!s.profiles.emplace(type, std::move(prof)).second)
      throw ScenarioError(path, fmt::format("duplicate profile for {}", to_string(type)));
  }

  if (r.has("settings")) {
    ObjectReader st(r.at("settings"), r.child("settings"));
    st.allow_only({"tick_ms", "control_period_ms", "horizon_ms", "assurance"});
    s.settings.tick_ms = st.integer("tick_ms", s.settings.tick_ms);
    s.settings.control_period_ms = st.integer("control_period_ms", s.settings.control_period_ms);
    s.settings.assurance = st.boolean("assurance", true);
    if (st.has("horizon_ms")) s.settings.horizon_ms = st.integer("horizon_ms");
    if (s.settings.tick_ms <= 0) throw ScenarioError(st.child("tick_ms"), "must be positive");
    if (s.settings.control_period_ms <= 0)
      throw ScenarioError(st.child("control_period_ms"), "must be positive");
    if (s.settings.horizon_ms < 0) throw ScenarioError(st.child("horizon_ms"), "must be >= 0");
  }

  if (r.has("events")) {
    const json& evs = r.array("events");
    for (std::size_t i = 0; i < evs.size(); ++i)
      s.events.push_back(event_from_json(evs[i], fmt::format("$.events[{}]", i)));
  }
  std::stable_sort(s.events.begin(), s.events.end(),
                   [](const SimEvent& a, const SimEvent& b) { return a.t_ms < b.t_ms; });

  bool explicit_horizon = r.has("settings") && root.at("settings").contains("horizon_ms");
  if (!explicit_horizon && !s.events.empty())
    s.settings.horizon_ms = s.events.back().t_ms + s.settings.tick_ms;

  s.validate();
  return s;
}

}  // namespace sliceorch

namespace sliceorch {

namespace {

json to_json(const NfMetrics& nf) {
  return json{{"quota_ms", nf.quota_ms}, {"limit_ms", nf.limit_ms}, {"used_ms", nf.used_ms}};
}

SliceId slice_from(const ObjectReader& r, const char* key) {
  const std::string text = r.string(key);
  return token_at(r.child(key), [&] { return SliceId::parse(text); });
}

}  // namespace

json to_json(const MetricsFrame& frame) {
  json slices = json::array();
  for (const auto& s : frame.slices)
    slices.push_back(json{{"id", s.id.str()},
                          {"pool_cuup", s.pool_cuup},
                          {"pool_upf", s.pool_upf},
                          {"demand_mbps", s.demand_mbps},
                          {"achieved_mbps", s.achieved_mbps},
                          {"rtt_ms", s.rtt_ms},
                          {"granted_prbs", s.granted_prbs},
                          {"prb_floor", s.prb_floor},
                          {"cuup", to_json(s.cuup)},
                          {"upf", to_json(s.upf)}});
  json pools = json::array();
  for (const auto& p : frame.pools)
    pools.push_back(json{{"id", p.id},
                         {"dataplane_budget_ms", p.dataplane_budget_ms},
                         {"quota_sum_ms", p.quota_sum_ms},
                         {"cpu_used_ms", p.cpu_used_ms},
                         {"cpu_utilization_fraction", p.cpu_utilization_fraction}});
  return json{{"seq", frame.seq},
              {"t_ms", frame.t_ms},
              {"assurance_enabled", frame.assurance_enabled},
              {"cumulative_cost", frame.cumulative_cost},
              {"slices", slices},
              {"pools", pools}};
}

json to_json(const ReconcileRecord& record) {
  json j{{"sequence", record.sequence},
         {"t_ms", record.t_ms},
         {"kind", std::string(to_string(record.action))}};
  if (!record.assurance) j["slice"] = record.slice.str();
  if (record.intent) j["intent"] = to_json(*record.intent);
  if (record.placement) j["placement"] = to_json(*record.placement);
  if (record.quota)
    j["quota"] = json{{"cpu_cuup_ms", record.quota->cuup_ms}, {"cpu_upf_ms", record.quota->upf_ms}};
  if (record.policy)
    j["policy"] = json{{"prb_floor", record.policy->floor}, {"prb_cap", record.policy->cap}};
  if (record.assurance) j["assurance"] = *record.assurance;
  if (!record.reason.empty()) j["reason"] = record.reason;
  return j;
}

Placement placement_from_json(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  r.allow_only({"slice", "pool_cuup", "pool_upf", "cpu_cuup_ms", "cpu_upf_ms", "ram_cuup_gb",
                "ram_upf_gb", "prb_floor", "predicted_rtt_ms"});
  Placement p;
  p.slice = slice_from(r, "slice");
  p.pool_cuup = r.string("pool_cuup");
  p.pool_upf = r.string("pool_upf");
  p.cpu_quota = {r.number("cpu_cuup_ms"), r.number("cpu_upf_ms")};
  p.ram_cuup_gb = r.number("ram_cuup_gb");
  p.ram_upf_gb = r.number("ram_upf_gb");
  p.prb_floor = r.small_int("prb_floor");
  p.predicted_rtt_ms = r.number("predicted_rtt_ms");
  return p;
}

ReconcileRecord record_from_json(const json& node, const std::string& path) {
  ObjectReader r(node, path);
  r.allow_only({"sequence", "t_ms", "kind", "slice", "intent", "placement", "quota", "policy",
                "assurance", "reason"});
  ReconcileRecord rec;
  rec.sequence = static_cast<std::uint64_t>(r.integer("sequence"));
  rec.t_ms = r.integer("t_ms");
  const std::string kind = r.string("kind");
  rec.action = token_at(r.child("kind"), [&] { return parse_reconcile_action(kind); });
  if (r.has("slice")) rec.slice = slice_from(r, "slice");
  if (r.has("intent")) rec.intent = intent_from_json(r.at("intent"), r.child("intent"));
  if (r.has("placement"))
    rec.placement = placement_from_json(r.at("placement"), r.child("placement"));
  if (r.has("quota")) {
    ObjectReader q(r.at("quota"), r.child("quota"));
    q.allow_only({"cpu_cuup_ms", "cpu_upf_ms"});
    rec.quota = CpuQuota{q.number("cpu_cuup_ms"), q.number("cpu_upf_ms")};
  }
  if (r.has("policy")) {
    ObjectReader q(r.at("policy"), r.child("policy"));
    q.allow_only({"prb_floor", "prb_cap"});
    rec.policy = PrbPolicy{q.small_int("prb_floor"), q.number("prb_cap")};
  }
  if (r.has("assurance")) {
    if (!r.at("assurance").is_boolean()) throw ScenarioError(r.child("assurance"), "expected a boolean");
    rec.assurance = r.at("assurance").get<bool>();
  }
  rec.reason = r.string("reason", "");
  return rec;
}

}  // namespace sliceorch
